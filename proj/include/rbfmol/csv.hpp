#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace rbfmol {

/// Doubles at full round-trip precision (17 significant digits).
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {}

    template <class... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        ((out_ << (first ? "" : ","), first = false, put(fields)), ...);
        out_ << "\n";
    }

    bool good() const { return out_.good(); }

  private:
    void put(double v) { out_ << g17(v); }
    void put(float v) { out_ << g17(v); }
    void put(int v) { out_ << v; }
    void put(long v) { out_ << v; }
    void put(unsigned long v) { out_ << v; }
    void put(const char* s) { out_ << s; }
    void put(const std::string& s) { out_ << s; }

    std::ofstream out_;
};

}  // namespace rbfmol
