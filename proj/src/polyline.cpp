#include "saltdel/polyline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace saltdel {

void write_polylines(const std::string& path, const std::vector<SlicePolyline>& lines) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open polyline file for write: " + path);
    out << "inline_k,crossline_n,time_m\n";
    for (const auto& sp : lines)
        for (const auto& p : sp.line.points) out << sp.k << "," << p[0] << "," << p[1] << "\n";
    if (!out) throw std::runtime_error("polyline write failed: " + path);
}

std::vector<SlicePolyline> read_polylines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polyline file: " + path);
    std::vector<SlicePolyline> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.find("inline_k") != std::string::npos) continue;
        }
        std::istringstream ss(line);
        int k;
        double n, m;
        char c1, c2;
        ss >> k >> c1 >> n >> c2 >> m;
        if (!ss || c1 != ',' || c2 != ',')
            throw std::runtime_error("malformed polyline row: " + line);
        if (out.empty() || out.back().k != k) {
            out.push_back({k, {}, 1});
        }
        out.back().line.points.push_back({n, m});
    }
    for (auto& sp : out) {
        auto& pts = sp.line.points;
        if (pts.size() >= 3) {
            double dn = pts.front()[0] - pts.back()[0];
            double dm = pts.front()[1] - pts.back()[1];
            sp.line.closed = std::abs(dn) <= 1.0 && std::abs(dm) <= 1.0;
        }
    }
    return out;
}

}  // namespace saltdel
