#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ndsr/instance.hpp"

namespace ndsr::cuts {

enum class RelationshipKind { OR, IF, CUT };

struct Relationship {
    RelationshipKind kind = RelationshipKind::CUT;
    int commodity = 0;
    int a = 0;
    int b = 0;
};

/// One valid inequality in the template
///   sum z_a over z_arcs  -  sum over x_pairs of the paths using that
///   (arc, commodity)  >=  rhs.
/// The families separated here have an empty x part, but the row
/// materialization and the pricing hook support the general shape.
struct Cut {
    std::vector<int> z_arcs;
    std::vector<std::pair<int, int>> x_pairs;  // (arc, commodity)
    double rhs = 1.0;
    std::string family;
    double violation = 0.0;  // at separation time
};

/// Exact-on-the-positive-side relationship tests built on shortest-path
/// queries. A `true` answer is always sound (so cuts derived from it are
/// valid); a `false` answer may be conservative for OR and IF, whose exact
/// decision would require joint-metric path existence. CUT is exact in both
/// directions. Caches distance tables per commodity and metric.
class RelationshipDetector {
public:
    explicit RelationshipDetector(const Instance& inst) : inst_(&inst) {}

    bool detect(int k, int a, int b, RelationshipKind kind);

private:
    bool detect_cut(int k, int a, int b);
    bool detect_if(int k, int a, int b);
    bool detect_or(int k, int a, int b);
    const std::vector<double>& source_dist(int k, int m, int source);

    const Instance* inst_;
    std::map<std::tuple<int, int, int>, std::vector<double>> source_dist_cache_;
    std::map<std::tuple<int, int, int, char>, bool> memo_;
};

/// Free-function form of the detector, for one-off queries.
bool detect_relationship(const Instance& inst, int k, int a, int b, RelationshipKind kind);

/// Scans the fractional support of a root LP point for the first violated
/// cut: pair cuts z_a + z_b >= 1 from a CUT relationship, then cover cuts
/// z_a + z_b + z_c >= 2 from three pairwise CUT relationships. Signatures in
/// `already_emitted` are skipped (sorted z arcs + rhs).
std::optional<Cut> find_violated_cut(const Instance& inst, const std::vector<double>& z_values,
                                     RelationshipDetector& detector,
                                     const std::vector<Cut>& already_emitted);

class OracleSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Brute-force validity check: enumerates every integer-feasible
/// (path selection, minimal activation) combination and verifies the cut.
/// Test utility for small instances; throws OracleSizeError when the
/// cross product exceeds `max_combinations`.
bool cut_validity_oracle(const Instance& inst, const Cut& cut,
                         std::int64_t max_combinations = 1'000'000);

}  // namespace ndsr::cuts
