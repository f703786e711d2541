#pragma once

#include "microset/intervals.hpp"
#include "microset/numeral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace microset::nano {

// Index combinatorics of the scheme: T_{-1} = {0,1},
// T_i = {2^{i+1}, ..., 2^{i+2}-1}, S_0 = T_{-1}, S_{i+1} = union of T_j over
// j in S_i. Lengths |I_{2k}| = |I_{2k+1}| = 2^(-2^{k+1}).

// Level i with j in T_i (-1 for j in {0,1}). Works on arbitrary BigInt j.
std::int64_t level_of(const BigInt& j);
// f(j) = 2^{level(j)+1}.
BigInt f_of(const BigInt& j);
// w(j) = floor(j/2)+1; |I_j| = 2^(-2^{w(j)}).
BigInt weight_of(const BigInt& j);
// Exact length 2^(-2^{w(j)}); throws past the materialization guard.
Numeral length_of(const BigInt& j);

std::vector<BigInt> T_of(std::int64_t i);  // i >= -1, small i
std::vector<BigInt> S_of(int i);           // i <= 2 materialized

enum class PlacementMode { kUniformSlot, kExactStage };

struct StageEntry {
  BigInt index;
  Interval interval;
};

struct StageResult {
  std::vector<StageEntry> entries;  // ascending index
  // exact-stage mode: nodes whose equal-gap layout is not exactly
  // representable fall back to uniform-slot placement and are listed here.
  std::vector<BigInt> fallback_nodes;
};

// Children of node j live on a uniform stride
//   stride(j) = slot + slot/2^{j+2},  slot = |I_j| / 2^{j+1},
// child t (index 2^{j+1}+t) flush-left at lo + t*stride. The widened stride
// keeps every child gap strictly above the largest threatening budget bound
// (1/4)^{2^{f(j)}}, which plain slots miss at j in {0,1,3}.
class Scheme {
 public:
  explicit Scheme(PlacementMode mode = PlacementMode::kUniformSlot) : mode_(mode) {}

  PlacementMode mode() const { return mode_; }
  Interval ambient() const;             // [0,1], base 2
  Interval root_interval(int which) const;  // I_0 = [0,1/4], I_1 = [1/2,3/4]

  // Materialized stage set with index labels; depth <= 2.
  StageResult stage(int depth) const;

  // Lazy child placement, O(1) numeral work in the node count.
  Interval child_interval(const Interval& parent, const BigInt& parent_index,
                          const BigInt& child_index) const;
  // Per-child stride of node j (two runs).
  Numeral stride_of(const BigInt& j, const Numeral& parent_len) const;

  // Interval of the node reached by a root-to-node index path.
  Interval node_interval(const std::vector<BigInt>& path) const;

 private:
  PlacementMode mode_;
};

// Proof-critical gap inequality at node j: the largest threatening budget
// bound (1/4)^{2^{f(j)}} = 2^(-2^{f(j)+1}) is strictly below the minimum gap
// between j's children. Verified in one of three exact regimes depending on
// how large the involved exponents get.
struct GapCertificate {
  bool strict = false;
  std::string tier;    // "numeral" | "exponent" | "symbolic"
  std::string detail;
};

GapCertificate gap_certificate(const BigInt& j);
// Same certificate for a node known only as child t of a node with index
// `parent_index` (its own index 2^{parent_index+1}+t may be too wide to
// materialize).
GapCertificate gap_certificate_symbolic(const BigInt& parent_index, const BigInt& t);

// One chain node: index when it is materializable, else parent+offset form.
struct ChainNode {
  std::optional<BigInt> index;
  BigInt parent_index;  // defined when !index (then node = child t of parent)
  BigInt offset;
};

// Random nested chain through the T-tree, depth steps below the roots.
// Offsets are drawn full-width while the child index stays materializable
// and sparse beyond that.
std::vector<ChainNode> sample_chain(std::uint64_t seed, int depth);

// Gap certificate for a sampled chain node.
GapCertificate chain_node_certificate(const ChainNode& node);

}  // namespace microset::nano
