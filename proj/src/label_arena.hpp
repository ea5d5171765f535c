#pragma once

// Internal label storage shared by the path enumeration and the constrained
// shortest path. Labels live in a flat arena; per-label metric totals and
// visited-node bitmaps sit in parallel arrays so a label is a few plain
// words regardless of |M| and |V|.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ndsr::detail {

struct LabelRec {
    int node = -1;
    int arc_in = -1;       // arc used to reach node, -1 for the root
    std::int64_t pred = -1;  // arena index of the parent label
    double cost = 0.0;
    bool marked = false;
};

class LabelArena {
public:
    LabelArena(int num_nodes, int num_metrics)
        : num_metrics_(num_metrics), words_((num_nodes + 63) / 64) {}

    std::int64_t size() const { return static_cast<std::int64_t>(recs_.size()); }

    std::int64_t push_root(int node) {
        recs_.push_back({node, -1, -1, 0.0, false});
        weights_.resize(weights_.size() + num_metrics_, 0.0);
        visited_.resize(visited_.size() + words_, 0);
        set_visited(size() - 1, node);
        return size() - 1;
    }

    // Child of `pred` across an arc into `node`; weights must be filled by
    // the caller through weights_of() right after.
    std::int64_t push_child(std::int64_t pred, int node, int arc_in, double cost) {
        recs_.push_back({node, arc_in, pred, cost, false});
        std::size_t base = weights_.size();
        weights_.resize(base + num_metrics_);
        const double* pw = &weights_[static_cast<std::size_t>(pred) * num_metrics_];
        for (int m = 0; m < num_metrics_; ++m) weights_[base + m] = pw[m];
        std::size_t vbase = visited_.size();
        visited_.resize(vbase + words_);
        const std::uint64_t* pv = &visited_[static_cast<std::size_t>(pred) * words_];
        for (int w = 0; w < words_; ++w) visited_[vbase + w] = pv[w];
        set_visited(size() - 1, node);
        return size() - 1;
    }

    LabelRec& rec(std::int64_t i) { return recs_[i]; }
    const LabelRec& rec(std::int64_t i) const { return recs_[i]; }

    double* weights_of(std::int64_t i) { return &weights_[static_cast<std::size_t>(i) * num_metrics_]; }
    const double* weights_of(std::int64_t i) const {
        return &weights_[static_cast<std::size_t>(i) * num_metrics_];
    }

    bool visited(std::int64_t i, int node) const {
        return (visited_[static_cast<std::size_t>(i) * words_ + node / 64] >>
                (node % 64)) & 1u;
    }

    // Arc ids from the root to label i, in path order.
    std::vector<int> arc_chain(std::int64_t i) const {
        std::vector<int> arcs;
        for (std::int64_t at = i; recs_[at].pred >= 0; at = recs_[at].pred)
            arcs.push_back(recs_[at].arc_in);
        std::reverse(arcs.begin(), arcs.end());
        return arcs;
    }

private:
    void set_visited(std::int64_t i, int node) {
        visited_[static_cast<std::size_t>(i) * words_ + node / 64] |= std::uint64_t{1} << (node % 64);
    }

    int num_metrics_;
    int words_;
    std::vector<LabelRec> recs_;
    std::vector<double> weights_;
    std::vector<std::uint64_t> visited_;
};

}  // namespace ndsr::detail
