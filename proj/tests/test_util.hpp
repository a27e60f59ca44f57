#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "shrinklab/grammar_text.hpp"

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << text;
}

inline std::string fixture_path(const std::string& name) {
    return std::string(SHRINKLAB_GRAMMAR_DIR) + "/" + name;
}

inline shrinklab::Grammar load_fixture(const std::string& name) {
    return shrinklab::parse_grammar(read_file(fixture_path(name)));
}
