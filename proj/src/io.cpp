#include "cca/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cca {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_atomic: cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write_atomic: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace cca
