#ifndef DNLS_IO_HPP
#define DNLS_IO_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

// CSV with floats at 17 significant digits (reproducible payloads).
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns) {
        fp_ = std::fopen(path.c_str(), "w");
        if (!fp_) throw config_error("csv: cannot open " + path);
        for (size_t i = 0; i < columns.size(); ++i)
            std::fprintf(fp_, "%s%s", columns[i].c_str(), i + 1 < columns.size() ? "," : "\n");
        ncols_ = columns.size();
    }
    ~CsvWriter() {
        if (fp_) std::fclose(fp_);
    }
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& vals, const std::string& tag = "") {
        for (size_t i = 0; i < vals.size(); ++i)
            std::fprintf(fp_, "%.17g%s", vals[i], (i + 1 < ncols_) ? "," : "");
        if (!tag.empty()) std::fprintf(fp_, "%s", tag.c_str());
        std::fprintf(fp_, "\n");
    }

private:
    std::FILE* fp_ = nullptr;
    size_t ncols_ = 0;
};

}  // namespace dnls

#endif
