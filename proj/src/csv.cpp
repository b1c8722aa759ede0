#include "chaoticlms/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace chaoticlms {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

AtomicFile::AtomicFile(std::string path) : path_(std::move(path)), tmp_(path_ + ".tmp") {
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("AtomicFile: cannot open " + tmp_);
}

AtomicFile::~AtomicFile() {
    if (!committed_) {
        out_.close();
        std::error_code ec;
        std::filesystem::remove(tmp_, ec);
    }
}

void AtomicFile::commit() {
    out_.flush();
    if (!out_) throw std::runtime_error("AtomicFile: write failed for " + tmp_);
    out_.close();
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
}

} // namespace chaoticlms
