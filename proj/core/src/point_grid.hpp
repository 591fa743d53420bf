#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "gperiod/complex_util.hpp"

namespace gperiod::detail {

// Uniform-cell spatial hash for nearest-neighbor queries against a fixed
// point set. Query cost grows with the ring distance to the answer, which
// stays tiny for the near-coincident sets the verifiers compare.
class PointGrid {
public:
    PointGrid(std::span<const cplx> points, double cell)
        : cell_(cell > 0 ? cell : 1.0) {
        points_.assign(points.begin(), points.end());
        for (size_t i = 0; i < points_.size(); ++i) {
            const int64_t x = coord(points_[i].real());
            const int64_t y = coord(points_[i].imag());
            min_x_ = std::min(min_x_, x);
            max_x_ = std::max(max_x_, x);
            min_y_ = std::min(min_y_, y);
            max_y_ = std::max(max_y_, y);
            cells_[key_xy(x, y)].push_back(i);
        }
    }

    bool empty() const { return points_.empty(); }

    // Distance to the nearest stored point (inf when the set is empty).
    double nearest(cplx q) const {
        if (points_.empty()) return std::numeric_limits<double>::infinity();
        const int64_t qx = coord(q.real());
        const int64_t qy = coord(q.imag());
        double best = std::numeric_limits<double>::infinity();
        for (int64_t ring = 0;; ++ring) {
            // anything in an unscanned ring is at least (ring-1)*cell away
            if (best <= (static_cast<double>(ring) - 1.0) * cell_) return best;
            scan_ring(qx, qy, ring, q, best);
            const bool covered = qx - ring <= min_x_ && qx + ring >= max_x_ &&
                                 qy - ring <= min_y_ && qy + ring >= max_y_;
            if (covered) return best;
        }
    }

private:
    int64_t coord(double v) const { return static_cast<int64_t>(std::floor(v / cell_)); }

    static uint64_t key_xy(int64_t x, int64_t y) {
        return static_cast<uint64_t>(x) * 0x9E3779B97F4A7C15ull ^
               (static_cast<uint64_t>(y) + 0x7F4A7C15u);
    }

    void scan_ring(int64_t qx, int64_t qy, int64_t ring, cplx q, double& best) const {
        auto visit = [&](int64_t cx, int64_t cy) {
            auto it = cells_.find(key_xy(cx, cy));
            if (it == cells_.end()) return;
            for (size_t idx : it->second)
                best = std::min(best, std::abs(points_[idx] - q));
        };
        if (ring == 0) {
            visit(qx, qy);
            return;
        }
        for (int64_t dx = -ring; dx <= ring; ++dx) {
            visit(qx + dx, qy - ring);
            visit(qx + dx, qy + ring);
        }
        for (int64_t dy = -ring + 1; dy <= ring - 1; ++dy) {
            visit(qx - ring, qy + dy);
            visit(qx + ring, qy + dy);
        }
    }

    double cell_;
    std::vector<cplx> points_;
    std::unordered_map<uint64_t, std::vector<size_t>> cells_;
    int64_t min_x_ = std::numeric_limits<int64_t>::max();
    int64_t max_x_ = std::numeric_limits<int64_t>::min();
    int64_t min_y_ = std::numeric_limits<int64_t>::max();
    int64_t max_y_ = std::numeric_limits<int64_t>::min();
};

}  // namespace gperiod::detail
