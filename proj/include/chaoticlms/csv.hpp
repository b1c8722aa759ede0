#pragma once

// Atomic file output (temp file + rename, so partial results never appear)
// and the number formatting used by every CSV export: %.17g round-trips
// doubles exactly, which is what makes rerun-for-rerun byte identity work.

#include <fstream>
#include <string>

namespace chaoticlms {

std::string fmt17(double v);

class AtomicFile {
public:
    explicit AtomicFile(std::string path);
    ~AtomicFile();

    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;

    std::ostream& stream() { return out_; }
    void commit();

private:
    std::string path_;
    std::string tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

} // namespace chaoticlms
