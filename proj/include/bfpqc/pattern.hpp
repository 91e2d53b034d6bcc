#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bfpqc {

// Total-rank ceiling shared by the pattern algebra and the simulator: a
// pattern of rank r holds 2^r bits, a register of r qubits holds 2^r
// amplitudes. Overridable per call (and via BFPQC_MAX_RANK in the CLI).
inline constexpr int kDefaultMaxRank = 24;

// A full basis of rank r materializes 2^r vectors of 2^r bits each, so
// materialization stops here; larger bases are reachable only through
// basis_member().
inline constexpr int kMaxMaterializedBasisRank = 16;

// Truth table of a Boolean function on `arity` input bits, packed LSB-first:
// bit i is f(i). The canonical text form is MSB-first (bit 2^n-1 printed
// leftmost), matching the usual truth-table layout, so parse()/format()
// reverse the order relative to storage.
class PatternVector {
 public:
  // values[i] = f(i); length must be a power of two >= 2.
  static PatternVector from_truth_table(const std::vector<int>& values);
  // MSB-first binary string; blanks between digits are ignored.
  static PatternVector parse(std::string_view text);
  static PatternVector zeros(int arity);
  static PatternVector ones(int arity);

  int arity() const { return arity_; }
  std::uint64_t size() const { return std::uint64_t{1} << arity_; }

  int bit(std::uint64_t x) const;  // f(x); throws if x >= 2^arity
  std::uint64_t popcount() const;

  PatternVector negated() const;
  PatternVector operator^(const PatternVector& other) const;

  bool operator==(const PatternVector& other) const = default;

  std::string format() const;  // MSB-first, no separators

  // Word w holds pattern bits [64w, 64w+63]; unused high bits are zero.
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  PatternVector(int arity, std::vector<std::uint64_t> words)
      : arity_(arity), words_(std::move(words)) {}

  friend PatternVector product(const PatternVector&, const PatternVector&, int);
  friend PatternVector extract_block(const PatternVector&, std::uint64_t, int);

  int arity_;
  std::vector<std::uint64_t> words_;
};

// p and q are orthogonal when p xor q has exactly half its bits set.
bool is_orthogonal(const PatternVector& p, const PatternVector& q);

// The pattern product p (.) q: one block per bit of p, block i equal to q
// when p_i = 0 and to ~q when p_i = 1. Block i occupies indices
// [i * 2^m, (i+1) * 2^m), i.e. block 0 sits rightmost in the printed form.
PatternVector product(const PatternVector& p, const PatternVector& q,
                      int max_rank = kDefaultMaxRank);

// The extended product f * g on truth tables: h(j + i*2^m) = g(j) xor f(i).
// Computed bit-by-bit from that recipe, independently of product(); the two
// agree everywhere.
PatternVector extended_product(const PatternVector& f, const PatternVector& g,
                               int max_rank = kDefaultMaxRank);

// Bits [block_index * 2^block_arity, ...) of p as a standalone pattern.
PatternVector extract_block(const PatternVector& p, std::uint64_t block_index,
                            int block_arity);

// An ordered list of 2^rank pattern vectors of length 2^rank. Construction
// only checks the shape; orthogonality is the job of verify_basis().
class PatternBasis {
 public:
  explicit PatternBasis(std::vector<PatternVector> members);

  int rank() const { return rank_; }
  std::uint64_t size() const { return members_.size(); }
  const PatternVector& member(std::uint64_t index) const;
  const std::vector<PatternVector>& members() const { return members_; }

 private:
  int rank_;
  std::vector<PatternVector> members_;
};

enum class BasisFamily { kImbalancedI, kBalancedB };

// Member-wise product, ordered row-major: member a*2^rank(Q) + b is
// P[a] (.) Q[b].
PatternBasis basis_product(const PatternBasis& p, const PatternBasis& q,
                           int max_rank = kDefaultMaxRank);

// True iff the list is a pattern basis: 2^rank members, each of length
// 2^rank, pairwise orthogonal.
bool verify_basis(const PatternBasis& basis);

// The imbalanced sequence: I_2 = (0001, 0010, 0100, 1000) and
// I_{2(n+1)} = I_2 (.) I_{2n}.
PatternBasis basis_I(int half_rank, int max_rank = kDefaultMaxRank);

// The balanced sequence: B_2 = (0000, 0101, 0011, 0110) and
// B_{2(m+1)} = B_2 (.) B_{2m}. Member 0 is always the constant-zero pattern.
PatternBasis basis_B(int half_rank, int max_rank = kDefaultMaxRank);

// Single member of I_{2n} or B_{2m} without materializing the basis. The
// recursive product structure makes member a*4^(n-1) + b equal to
// base[a] (.) member(n-1, b), so the member is a fold over the base-4 digits
// of the index.
PatternVector basis_member(BasisFamily family, int half_rank,
                           std::uint64_t index, int max_rank = kDefaultMaxRank);

// Names a function by class rather than by raw pattern: f_index in F_rank or
// g_index in G_rank.
struct FunctionClassId {
  enum class Family { kPromisedF, kBalancedG };

  Family family;
  int rank = 0;  // 2n for F, 2m for G
  std::uint64_t index = 0;

  void validate() const;  // rank even >= 2, index < 2^rank
  PatternVector pattern(int max_rank = kDefaultMaxRank) const;
};

}  // namespace bfpqc
