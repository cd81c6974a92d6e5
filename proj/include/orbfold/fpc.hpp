#ifndef ORBFOLD_FPC_HPP
#define ORBFOLD_FPC_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic in free products of cyclic groups. Elements are kept in
// normal form: adjacent letters use distinct factors, exponents are nonzero,
// and exponents of a finite factor of order p lie in {1..p-1}.

namespace orbfold {

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct FpcGroup {
  // 0 encodes an infinite cyclic factor; finite factors have order >= 2.
  std::vector<long> factor_orders;

  FpcGroup() = default;
  explicit FpcGroup(std::vector<long> orders) : factor_orders(std::move(orders)) {
    for (long p : factor_orders)
      if (p < 0 || p == 1) throw error("factor order must be 0 or >= 2");
  }

  std::size_t factor_count() const { return factor_orders.size(); }
  bool is_trivial() const { return factor_orders.empty(); }
  long factor_order(int i) const { return factor_orders.at(static_cast<std::size_t>(i)); }
  // Group order; 0 means infinite.
  long order() const {
    if (factor_orders.empty()) return 1;
    if (factor_orders.size() == 1) return factor_orders[0];
    return 0;
  }
  bool operator==(const FpcGroup&) const = default;
};

struct FpcLetter {
  int factor = 0;
  long exp = 0;
  auto operator<=>(const FpcLetter&) const = default;
};

struct FpcWord {
  std::vector<FpcLetter> letters;

  FpcWord() = default;
  explicit FpcWord(std::vector<FpcLetter> ls) : letters(std::move(ls)) {}

  static FpcWord identity() { return FpcWord(); }
  static FpcWord generator(int factor, long exp = 1) {
    return FpcWord({FpcLetter{factor, exp}});
  }

  bool is_identity() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }
  bool operator==(const FpcWord&) const = default;
};

// Reduces an arbitrary letter sequence to normal form; rejects out-of-range
// factor indices.
FpcWord canonical(const FpcGroup& g, const FpcWord& w);
bool valid_word(const FpcGroup& g, const FpcWord& w);

FpcWord mul(const FpcGroup& g, const FpcWord& a, const FpcWord& b);
FpcWord inv(const FpcGroup& g, const FpcWord& a);
FpcWord pow(const FpcGroup& g, const FpcWord& a, long n);
// g x g^-1
FpcWord conj(const FpcGroup& g, const FpcWord& by, const FpcWord& x);

// Deterministic length-lexicographic order: syllable count first, then letters
// by factor index and exponent key (finite factors ascending; infinite factors
// by |e| then sign, so 1 < -1 < 2 < -2 < ...).
int compare(const FpcGroup& g, const FpcWord& a, const FpcWord& b);

// Exact element order; 0 means infinite, identity has order 1.
long order_of(const FpcGroup& g, const FpcWord& w);

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicForm {
  FpcWord conjugator;
  FpcWord core;
};
CyclicForm cyclic_form(const FpcGroup& g, const FpcWord& w);

// Smallest n >= 0 with w = t^n when t has finite order, otherwise the unique
// n in Z; nullopt if w is not a power of t. Throws if t = 1 and w != 1.
std::optional<long> is_power_of(const FpcGroup& g, const FpcWord& w, const FpcWord& t);

// Length-lex minimal element of the right coset w<t>, with the witness
// exponent: rep = w * t^exponent.
struct CosetRep {
  FpcWord rep;
  long exponent = 0;
};
CosetRep coset_min_rep(const FpcGroup& g, const FpcWord& w, const FpcWord& t);

std::string to_string(const FpcWord& w);

// Homomorphism between free products of cyclic groups, given on the factor
// generators of the source. Order divisibility is checked at construction.
class FpcHom {
 public:
  FpcHom() = default;
  FpcHom(FpcGroup src, FpcGroup dst, std::vector<FpcWord> images);

  static FpcHom identity(const FpcGroup& g);

  const FpcGroup& source() const { return src_; }
  const FpcGroup& target() const { return dst_; }
  const FpcWord& image(int factor) const { return images_.at(static_cast<std::size_t>(factor)); }
  const std::vector<FpcWord>& images() const { return images_; }

  FpcWord apply(const FpcWord& w) const;
  // this ∘ inner
  FpcHom compose(const FpcHom& inner) const;
  // i_g ∘ this
  FpcHom conjugated(const FpcWord& by) const;

  bool operator==(const FpcHom&) const = default;

 private:
  FpcGroup src_, dst_;
  std::vector<FpcWord> images_;
};

enum class Verdict { Yes, No, Unknown };

struct InjectivityReport {
  Verdict verdict = Verdict::Unknown;
  std::optional<FpcWord> kernel_witness;  // nontrivial source element mapping to 1
};

// Exact where decidable by factor orders / abelian targets; otherwise a
// bounded kernel search that may return Unknown.
InjectivityReport injectivity(const FpcHom& h, int max_syllables = 6);

// Elements of a finitely generated subgroup together with expressions in the
// given generators. Closed enumeration only succeeds for finite subgroups
// within `cap`; otherwise returns elements found up to the BFS depth bound.
struct SubgroupElement {
  FpcWord element;
  FpcWord expression;  // word in subgroup generators (factor i = generator i)
};
struct SubgroupEnumeration {
  bool complete = false;
  std::vector<SubgroupElement> elements;
};
SubgroupEnumeration enumerate_subgroup(const FpcGroup& g,
                                       const std::vector<FpcWord>& generators,
                                       std::size_t cap = 4096,
                                       int max_depth = 16);

// All elements of a finite FPC group (trivial or single finite factor).
std::vector<FpcWord> enumerate_group(const FpcGroup& g);

}  // namespace orbfold

#endif
