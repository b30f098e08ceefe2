#pragma once
#include "vshmem/config.hpp"

#include <fstream>
#include <sstream>
#include <string>

inline std::string default_cfg_text()
{
    std::ifstream f(VSHMEM_DEFAULT_CONFIG);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

inline vsh::Config default_cfg(const std::vector<std::string>& ov = {})
{
    return vsh::load_config(VSHMEM_DEFAULT_CONFIG, ov);
}

inline std::string with_preset(const std::string& p)
{
    auto t = default_cfg_text();
    auto k = t.find("preset = eirw");
    t.replace(k, 13, "preset = " + p);
    return t;
}

// drop the line that starts with key
inline std::string without_key(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.rfind(key + " ", 0) != 0) out += line + "\n";
    return out;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
