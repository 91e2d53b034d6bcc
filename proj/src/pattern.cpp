#include "bfpqc/pattern.hpp"

#include <bit>
#include <stdexcept>

namespace bfpqc {

namespace {

constexpr std::uint64_t kAllOnes = ~std::uint64_t{0};

std::size_t word_count(std::uint64_t bits) { return bits <= 64 ? 1 : bits / 64; }

// Mask selecting the meaningful bits of the last word (all ones when the
// pattern fills whole words).
std::uint64_t last_word_mask(std::uint64_t bits) {
  return bits >= 64 ? kAllOnes : (std::uint64_t{1} << bits) - 1;
}

int arity_from_length(std::size_t length) {
  if (length < 2 || (length & (length - 1)) != 0) {
    throw std::invalid_argument(
        "pattern length must be a power of two and at least 2, got " +
        std::to_string(length));
  }
  return std::countr_zero(length);
}

void check_rank_limit(int rank, int max_rank) {
  if (rank > max_rank) {
    throw std::length_error("pattern rank " + std::to_string(rank) +
                            " exceeds the configured limit of " +
                            std::to_string(max_rank));
  }
}

}  // namespace

PatternVector PatternVector::from_truth_table(const std::vector<int>& values) {
  const int arity = arity_from_length(values.size());
  std::vector<std::uint64_t> words(word_count(values.size()), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0 && values[i] != 1) {
      throw std::invalid_argument("truth table entries must be 0 or 1");
    }
    if (values[i]) words[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return PatternVector(arity, std::move(words));
}

PatternVector PatternVector::parse(std::string_view text) {
  std::vector<int> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c == ' ') continue;
    if (c != '0' && c != '1') {
      throw std::invalid_argument("pattern strings may only contain 0, 1 and blanks");
    }
    digits.push_back(c - '0');
  }
  // The string lists bit 2^n-1 first; flip to index order.
  std::vector<int> values(digits.rbegin(), digits.rend());
  return from_truth_table(values);
}

PatternVector PatternVector::zeros(int arity) {
  if (arity < 1) throw std::invalid_argument("arity must be at least 1");
  return PatternVector(arity, std::vector<std::uint64_t>(
                                  word_count(std::uint64_t{1} << arity), 0));
}

PatternVector PatternVector::ones(int arity) { return zeros(arity).negated(); }

int PatternVector::bit(std::uint64_t x) const {
  if (x >= size()) {
    throw std::out_of_range("input " + std::to_string(x) +
                            " out of range for arity " + std::to_string(arity_));
  }
  return static_cast<int>((words_[x >> 6] >> (x & 63)) & 1);
}

std::uint64_t PatternVector::popcount() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

PatternVector PatternVector::negated() const {
  std::vector<std::uint64_t> words(words_.size());
  for (std::size_t w = 0; w < words_.size(); ++w) words[w] = ~words_[w];
  words.back() &= last_word_mask(size());
  return PatternVector(arity_, std::move(words));
}

PatternVector PatternVector::operator^(const PatternVector& other) const {
  if (arity_ != other.arity_) {
    throw std::invalid_argument("bitwise sum requires equal arities");
  }
  std::vector<std::uint64_t> words(words_.size());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    words[w] = words_[w] ^ other.words_[w];
  }
  return PatternVector(arity_, std::move(words));
}

std::string PatternVector::format() const {
  std::string out(size(), '0');
  for (std::uint64_t i = 0; i < size(); ++i) {
    if ((words_[i >> 6] >> (i & 63)) & 1) out[size() - 1 - i] = '1';
  }
  return out;
}

bool is_orthogonal(const PatternVector& p, const PatternVector& q) {
  if (p.arity() != q.arity()) {
    throw std::invalid_argument("orthogonality requires equal arities");
  }
  return (p ^ q).popcount() == p.size() / 2;
}

PatternVector product(const PatternVector& p, const PatternVector& q,
                      int max_rank) {
  const int rank = p.arity() + q.arity();
  check_rank_limit(rank, max_rank);
  const std::uint64_t block_len = q.size();
  std::vector<std::uint64_t> words(word_count(std::uint64_t{1} << rank), 0);

  if (block_len >= 64) {
    // Blocks are word-aligned: copy or complement whole words of q.
    const std::size_t words_per_block = block_len / 64;
    for (std::uint64_t i = 0; i < p.size(); ++i) {
      const bool flip = p.bit(i) != 0;
      const std::size_t base = i * words_per_block;
      for (std::size_t w = 0; w < words_per_block; ++w) {
        words[base + w] = flip ? ~q.words()[w] : q.words()[w];
      }
    }
  } else {
    // Several blocks per word: precompose q and ~q in the low bits.
    const std::uint64_t mask = (std::uint64_t{1} << block_len) - 1;
    const std::uint64_t qb = q.words()[0] & mask;
    const std::uint64_t nqb = ~qb & mask;
    const std::uint64_t blocks_per_word = 64 / block_len;
    for (std::uint64_t i = 0; i < p.size(); ++i) {
      const std::uint64_t chunk = p.bit(i) ? nqb : qb;
      words[i / blocks_per_word] |= chunk << ((i % blocks_per_word) * block_len);
    }
  }
  return PatternVector(rank, std::move(words));
}

PatternVector extended_product(const PatternVector& f, const PatternVector& g,
                               int max_rank) {
  const int rank = f.arity() + g.arity();
  check_rank_limit(rank, max_rank);
  std::vector<int> values(std::size_t{1} << rank);
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    const int fi = f.bit(i);
    for (std::uint64_t j = 0; j < g.size(); ++j) {
      values[(i << g.arity()) | j] = g.bit(j) ^ fi;
    }
  }
  return PatternVector::from_truth_table(values);
}

PatternVector extract_block(const PatternVector& p, std::uint64_t block_index,
                            int block_arity) {
  if (block_arity < 1 || block_arity > p.arity()) {
    throw std::out_of_range("block arity out of range");
  }
  const std::uint64_t block_len = std::uint64_t{1} << block_arity;
  if (block_index >= p.size() / block_len) {
    throw std::out_of_range("block index out of range");
  }
  const std::uint64_t start = block_index * block_len;
  std::vector<std::uint64_t> words(word_count(block_len), 0);
  if (block_len >= 64) {
    const std::size_t base = start / 64;
    for (std::size_t w = 0; w < words.size(); ++w) {
      words[w] = p.words()[base + w];
    }
  } else {
    words[0] = (p.words()[start >> 6] >> (start & 63)) &
               ((std::uint64_t{1} << block_len) - 1);
  }
  return PatternVector(block_arity, std::move(words));
}

PatternBasis::PatternBasis(std::vector<PatternVector> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw std::invalid_argument("a basis needs at least one member");
  }
  rank_ = members_.front().arity();
  for (const PatternVector& m : members_) {
    if (m.arity() != rank_) {
      throw std::invalid_argument("basis members must share one arity");
    }
  }
}

const PatternVector& PatternBasis::member(std::uint64_t index) const {
  if (index >= members_.size()) {
    throw std::out_of_range("basis member index out of range");
  }
  return members_[index];
}

PatternBasis basis_product(const PatternBasis& p, const PatternBasis& q,
                           int max_rank) {
  const int rank = p.rank() + q.rank();
  check_rank_limit(rank, max_rank);
  check_rank_limit(rank, kMaxMaterializedBasisRank);
  std::vector<PatternVector> members;
  members.reserve(p.size() * q.size());
  for (std::uint64_t a = 0; a < p.size(); ++a) {
    for (std::uint64_t b = 0; b < q.size(); ++b) {
      members.push_back(product(p.member(a), q.member(b), max_rank));
    }
  }
  return PatternBasis(std::move(members));
}

bool verify_basis(const PatternBasis& basis) {
  const std::uint64_t expected = std::uint64_t{1} << basis.rank();
  if (basis.size() != expected) return false;
  for (std::uint64_t a = 0; a < basis.size(); ++a) {
    for (std::uint64_t b = a + 1; b < basis.size(); ++b) {
      if (!is_orthogonal(basis.member(a), basis.member(b))) return false;
    }
  }
  return true;
}

namespace {

PatternBasis base_basis(BasisFamily family) {
  if (family == BasisFamily::kImbalancedI) {
    return PatternBasis({PatternVector::parse("0001"), PatternVector::parse("0010"),
                         PatternVector::parse("0100"), PatternVector::parse("1000")});
  }
  return PatternBasis({PatternVector::parse("0000"), PatternVector::parse("0101"),
                       PatternVector::parse("0011"), PatternVector::parse("0110")});
}

PatternBasis build_basis(BasisFamily family, int half_rank, int max_rank) {
  if (half_rank < 1) {
    throw std::invalid_argument("half rank must be at least 1");
  }
  check_rank_limit(2 * half_rank, max_rank);
  check_rank_limit(2 * half_rank, kMaxMaterializedBasisRank);
  const PatternBasis base = base_basis(family);
  PatternBasis result = base;
  for (int step = 2; step <= half_rank; ++step) {
    result = basis_product(base, result, max_rank);
  }
  return result;
}

}  // namespace

PatternBasis basis_I(int half_rank, int max_rank) {
  return build_basis(BasisFamily::kImbalancedI, half_rank, max_rank);
}

PatternBasis basis_B(int half_rank, int max_rank) {
  return build_basis(BasisFamily::kBalancedB, half_rank, max_rank);
}

PatternVector basis_member(BasisFamily family, int half_rank,
                           std::uint64_t index, int max_rank) {
  if (half_rank < 1) {
    throw std::invalid_argument("half rank must be at least 1");
  }
  const int rank = 2 * half_rank;
  check_rank_limit(rank, max_rank);
  if (index >= (std::uint64_t{1} << rank)) {
    throw std::out_of_range("basis member index out of range");
  }
  const PatternBasis base = base_basis(family);
  // Most significant base-4 digit selects the outermost product factor.
  PatternVector acc = base.member((index >> (2 * (half_rank - 1))) & 3);
  for (int t = half_rank - 2; t >= 0; --t) {
    acc = product(acc, base.member((index >> (2 * t)) & 3), max_rank);
  }
  return acc;
}

void FunctionClassId::validate() const {
  if (rank < 2 || rank % 2 != 0) {
    throw std::invalid_argument("class rank must be an even integer >= 2");
  }
  if (rank < 64 && index >= (std::uint64_t{1} << rank)) {
    throw std::out_of_range("class index out of range for rank " +
                            std::to_string(rank));
  }
}

PatternVector FunctionClassId::pattern(int max_rank) const {
  validate();
  const BasisFamily fam = family == Family::kPromisedF
                              ? BasisFamily::kImbalancedI
                              : BasisFamily::kBalancedB;
  return basis_member(fam, rank / 2, index, max_rank);
}

}  // namespace bfpqc
