// trace_io.cpp - population trace CSV reader/writer
#include "qedtd/trace_io.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qedtd {

void write_trace_csv(const std::string& path, const PopulationTrace& trace) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp)
        throw std::runtime_error("cannot write trace file '" + path + "'");
    std::fputs("t_s,Re_P,Im_P,abs_P_sq\n", fp);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g\n", trace.t[i],
                     trace.P[i].real(), trace.P[i].imag(), std::norm(trace.P[i]));
    }
    std::fclose(fp);
}

PopulationTrace read_trace_csv(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp)
        throw std::runtime_error("cannot read trace file '" + path + "'");
    PopulationTrace trace;
    char line[256];
    bool header = true;
    while (std::fgets(line, sizeof(line), fp)) {
        if (header) {
            header = false;
            continue;
        }
        double t = 0, re = 0, im = 0, p2 = 0;
        if (std::sscanf(line, "%lg,%lg,%lg,%lg", &t, &re, &im, &p2) != 4) {
            std::fclose(fp);
            throw std::runtime_error("malformed trace row in '" + path + "'");
        }
        trace.t.push_back(t);
        trace.P.emplace_back(re, im);
    }
    std::fclose(fp);
    return trace;
}

} // namespace qedtd
