#include "orbfold/fpc.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace orbfold {

namespace {

long mod_exp(long e, long p) {
  // canonical exponent: for finite order p, in {0..p-1}; untouched for p = 0
  if (p == 0) return e;
  long m = e % p;
  if (m < 0) m += p;
  return m;
}

void push_letter(const FpcGroup& g, std::vector<FpcLetter>& out, int factor, long exp) {
  long p = g.factor_order(factor);
  if (!out.empty() && out.back().factor == factor) {
    long merged = out.back().exp + exp;
    merged = mod_exp(merged, p);
    if (merged == 0)
      out.pop_back();
    else
      out.back().exp = merged;
    return;
  }
  long e = mod_exp(exp, p);
  if (e != 0) out.push_back(FpcLetter{factor, e});
}

// exponent key for the deterministic order: finite ascending, infinite by
// (|e|, sign)
std::pair<long, long> exp_key(long p, long e) {
  if (p != 0) return {e, 0};
  return {e < 0 ? -e : e, e < 0 ? 1 : 0};
}

}  // namespace

FpcWord canonical(const FpcGroup& g, const FpcWord& w) {
  std::vector<FpcLetter> out;
  out.reserve(w.letters.size());
  for (const FpcLetter& l : w.letters) {
    if (l.factor < 0 || static_cast<std::size_t>(l.factor) >= g.factor_count())
      throw error("word references factor " + std::to_string(l.factor) +
                  " outside group with " + std::to_string(g.factor_count()) + " factors");
    push_letter(g, out, l.factor, l.exp);
  }
  return FpcWord(std::move(out));
}

bool valid_word(const FpcGroup& g, const FpcWord& w) {
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    const FpcLetter& l = w.letters[i];
    if (l.factor < 0 || static_cast<std::size_t>(l.factor) >= g.factor_count()) return false;
    long p = g.factor_order(l.factor);
    if (l.exp == 0) return false;
    if (p != 0 && (l.exp < 1 || l.exp >= p)) return false;
    if (i > 0 && w.letters[i - 1].factor == l.factor) return false;
  }
  return true;
}

FpcWord mul(const FpcGroup& g, const FpcWord& a, const FpcWord& b) {
  std::vector<FpcLetter> out = a.letters;
  for (const FpcLetter& l : b.letters) push_letter(g, out, l.factor, l.exp);
  return FpcWord(std::move(out));
}

FpcWord inv(const FpcGroup& g, const FpcWord& a) {
  std::vector<FpcLetter> out;
  out.reserve(a.letters.size());
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    out.push_back(FpcLetter{it->factor, mod_exp(-it->exp, g.factor_order(it->factor))});
  return FpcWord(std::move(out));
}

FpcWord pow(const FpcGroup& g, const FpcWord& a, long n) {
  if (n == 0 || a.is_identity()) return FpcWord::identity();
  if (a.letters.size() == 1) {
    const FpcLetter& l = a.letters.front();
    long p = g.factor_order(l.factor);
    long e = mod_exp(l.exp * n, p);  // exact for desk-scale exponents
    return e == 0 ? FpcWord::identity() : FpcWord::generator(l.factor, e);
  }
  CyclicForm cf = cyclic_form(g, a);
  long k = n < 0 ? -n : n;
  FpcWord core = n < 0 ? inv(g, cf.core) : cf.core;
  FpcWord acc = FpcWord::identity();
  for (long i = 0; i < k; ++i) acc = mul(g, acc, core);
  return mul(g, mul(g, cf.conjugator, acc), inv(g, cf.conjugator));
}

FpcWord conj(const FpcGroup& g, const FpcWord& by, const FpcWord& x) {
  return mul(g, mul(g, by, x), inv(g, by));
}

int compare(const FpcGroup& g, const FpcWord& a, const FpcWord& b) {
  if (a.letters.size() != b.letters.size())
    return a.letters.size() < b.letters.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    const FpcLetter& x = a.letters[i];
    const FpcLetter& y = b.letters[i];
    if (x.factor != y.factor) return x.factor < y.factor ? -1 : 1;
    auto kx = exp_key(g.factor_order(x.factor), x.exp);
    auto ky = exp_key(g.factor_order(y.factor), y.exp);
    if (kx != ky) return kx < ky ? -1 : 1;
  }
  return 0;
}

CyclicForm cyclic_form(const FpcGroup& g, const FpcWord& w) {
  CyclicForm cf;
  cf.conjugator = FpcWord::identity();
  cf.core = w;
  while (cf.core.letters.size() >= 3 &&
         cf.core.letters.front().factor == cf.core.letters.back().factor) {
    FpcLetter first = cf.core.letters.front();
    std::vector<FpcLetter> middle(cf.core.letters.begin() + 1, cf.core.letters.end() - 1);
    FpcLetter last = cf.core.letters.back();
    cf.conjugator = mul(g, cf.conjugator, FpcWord::generator(first.factor, first.exp));
    push_letter(g, middle, last.factor, last.exp);
    push_letter(g, middle, first.factor, first.exp);
    // re-canonicalize: the appends may cascade
    cf.core = canonical(g, FpcWord(std::move(middle)));
    if (cf.core.is_identity()) break;
  }
  return cf;
}

long order_of(const FpcGroup& g, const FpcWord& w) {
  if (w.is_identity()) return 1;
  CyclicForm cf = cyclic_form(g, w);
  if (cf.core.letters.size() >= 2) return 0;  // cyclically reduced, length >= 2
  if (cf.core.is_identity()) return 1;        // cannot happen for canonical nontrivial w
  const FpcLetter& l = cf.core.letters.front();
  long p = g.factor_order(l.factor);
  if (p == 0) return 0;
  return p / std::gcd(mod_exp(l.exp, p), p);
}

std::optional<long> is_power_of(const FpcGroup& g, const FpcWord& w, const FpcWord& t) {
  if (t.is_identity()) {
    if (w.is_identity()) return 0;
    throw error("is_power_of: t is the identity but w is not");
  }
  if (w.is_identity()) return 0;
  long m = order_of(g, t);
  if (m > 0) {
    FpcWord acc = FpcWord::identity();
    for (long n = 0; n < m; ++n) {
      if (acc == w) return n;
      acc = mul(g, acc, t);
    }
    return std::nullopt;
  }
  CyclicForm cf = cyclic_form(g, t);
  if (cf.core.letters.size() == 1) {
    // t = c s^e c^-1 with s of infinite order: solve c^-1 w c = s^(n e)
    FpcWord v = mul(g, mul(g, inv(g, cf.conjugator), w), cf.conjugator);
    if (v.letters.size() != 1) return std::nullopt;
    const FpcLetter& vl = v.letters.front();
    const FpcLetter& tl = cf.core.letters.front();
    if (vl.factor != tl.factor) return std::nullopt;
    if (vl.exp % tl.exp != 0) return std::nullopt;
    return vl.exp / tl.exp;
  }
  long core_len = static_cast<long>(cf.core.letters.size());
  long bound = static_cast<long>(w.letters.size() + t.letters.size()) / std::max<long>(1, core_len) + 2;
  FpcWord up = FpcWord::identity(), down = FpcWord::identity();
  for (long n = 0; n <= bound; ++n) {
    if (up == w) return n;
    if (n > 0 && down == w) return -n;
    up = mul(g, up, t);
    down = mul(g, down, inv(g, t));
  }
  return std::nullopt;
}

CosetRep coset_min_rep(const FpcGroup& g, const FpcWord& w, const FpcWord& t) {
  if (t.is_identity()) throw error("coset_min_rep: t must not be the identity");
  auto better = [&](const CosetRep& a, const CosetRep& b) {
    int c = compare(g, a.rep, b.rep);
    if (c != 0) return c < 0;
    return a.exponent < b.exponent;  // deterministic tie-break
  };
  auto candidate = [&](long n) { return CosetRep{mul(g, w, pow(g, t, n)), n}; };

  long m = order_of(g, t);
  CosetRep best = candidate(0);
  if (m > 0) {
    for (long n = 1; n < m; ++n) {
      CosetRep c = candidate(n);
      if (better(c, best)) best = c;
    }
    return best;
  }
  CyclicForm cf = cyclic_form(g, t);
  if (cf.core.letters.size() == 1) {
    // w t^n = (w c) s^(n e) c^-1: only the single interior exponent varies,
    // so the minimum sits at full cancellation or near n = -m0/e.
    const FpcLetter& tl = cf.core.letters.front();
    FpcWord u = mul(g, w, cf.conjugator);
    std::vector<long> cand = {0, 1, -1};
    if (!u.letters.empty() && u.letters.back().factor == tl.factor) {
      long m0 = u.letters.back().exp;
      long approx = -m0 / tl.exp;
      for (long d = -2; d <= 2; ++d) cand.push_back(approx + d);
      if (m0 % tl.exp == 0) cand.push_back(-m0 / tl.exp);
    }
    for (long n : cand) {
      CosetRep c = candidate(n);
      if (better(c, best)) best = c;
    }
    return best;
  }
  long bound = 2 * static_cast<long>(w.letters.size() + t.letters.size()) + 4;
  FpcWord up = w, down = w;
  for (long n = 1; n <= bound; ++n) {
    up = mul(g, up, t);
    down = mul(g, down, inv(g, t));
    CosetRep cu{up, n}, cd{down, -n};
    if (better(cu, best)) best = cu;
    if (better(cd, best)) best = cd;
  }
  return best;
}

std::string to_string(const FpcWord& w) {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) os << ".";
    os << "s" << w.letters[i].factor;
    if (w.letters[i].exp != 1) os << "^" << w.letters[i].exp;
  }
  return os.str();
}

FpcHom::FpcHom(FpcGroup src, FpcGroup dst, std::vector<FpcWord> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
  if (images_.size() != src_.factor_count())
    throw error("homomorphism needs one image per source factor");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    images_[i] = canonical(dst_, images_[i]);
    long p = src_.factor_orders[i];
    if (p == 0) continue;
    long m = order_of(dst_, images_[i]);
    if (m == 0 || p % m != 0)
      throw error("image of finite factor " + std::to_string(i) +
                  " has order not dividing " + std::to_string(p));
  }
}

FpcHom FpcHom::identity(const FpcGroup& g) {
  std::vector<FpcWord> images;
  for (std::size_t i = 0; i < g.factor_count(); ++i)
    images.push_back(FpcWord::generator(static_cast<int>(i)));
  return FpcHom(g, g, std::move(images));
}

FpcWord FpcHom::apply(const FpcWord& w) const {
  FpcWord out = FpcWord::identity();
  for (const FpcLetter& l : w.letters)
    out = mul(dst_, out, pow(dst_, image(l.factor), l.exp));
  return out;
}

FpcHom FpcHom::compose(const FpcHom& inner) const {
  if (!(inner.target() == src_)) throw error("compose: inner target != outer source");
  std::vector<FpcWord> images;
  images.reserve(inner.images_.size());
  for (const FpcWord& w : inner.images_) images.push_back(apply(w));
  return FpcHom(inner.source(), dst_, std::move(images));
}

FpcHom FpcHom::conjugated(const FpcWord& by) const {
  std::vector<FpcWord> images;
  images.reserve(images_.size());
  for (const FpcWord& w : images_) images.push_back(conj(dst_, by, w));
  return FpcHom(src_, dst_, std::move(images));
}

InjectivityReport injectivity(const FpcHom& h, int max_syllables) {
  const FpcGroup& src = h.source();
  const FpcGroup& dst = h.target();
  // factor-order drops give exact kernel witnesses
  for (std::size_t i = 0; i < src.factor_count(); ++i) {
    long p = src.factor_orders[i];
    long m = order_of(dst, h.image(static_cast<int>(i)));
    if (p == 0) {
      if (m != 0)
        return {Verdict::No, FpcWord::generator(static_cast<int>(i), std::max<long>(m, 1))};
    } else if (m != p) {
      return {Verdict::No, FpcWord::generator(static_cast<int>(i), m)};
    }
  }
  if (src.factor_count() <= 1) return {Verdict::Yes, std::nullopt};
  auto commutator = [&](int a, int b) {
    return canonical(src, FpcWord({FpcLetter{a, 1}, FpcLetter{b, 1}, FpcLetter{a, -1},
                                   FpcLetter{b, -1}}));
  };
  if (dst.factor_count() <= 1) {
    // target cyclic hence abelian; a commutator of two factors dies
    return {Verdict::No, commutator(0, 1)};
  }
  // If every image is a conjugated factor power, the images sit in vertex
  // stabilizers of the Bass-Serre tree; distinct vertices generate their free
  // product, so order preservation settles the question either way.
  {
    bool all_single = true;
    std::vector<std::pair<int, FpcWord>> vert;  // (target factor, conjugator)
    for (std::size_t i = 0; i < src.factor_count() && all_single; ++i) {
      CyclicForm cf = cyclic_form(dst, h.image(static_cast<int>(i)));
      if (cf.core.letters.size() != 1)
        all_single = false;
      else
        vert.push_back({cf.core.letters.front().factor, cf.conjugator});
    }
    if (all_single) {
      for (std::size_t a = 0; a < vert.size(); ++a)
        for (std::size_t b = a + 1; b < vert.size(); ++b) {
          if (vert[a].first != vert[b].first) continue;
          FpcWord u = mul(dst, inv(dst, vert[a].second), vert[b].second);
          bool same_vertex =
              u.is_identity() ||
              (u.letters.size() == 1 && u.letters.front().factor == vert[a].first);
          if (same_vertex)
            // both factors land in one cyclic conjugate, so commutators die
            return {Verdict::No, commutator(static_cast<int>(a), static_cast<int>(b))};
        }
      return {Verdict::Yes, std::nullopt};
    }
  }
  // bounded kernel search over short source words
  std::vector<FpcWord> frontier = {FpcWord::identity()};
  std::vector<FpcWord> gens;
  for (std::size_t i = 0; i < src.factor_count(); ++i) {
    long p = src.factor_orders[i];
    if (p == 0) {
      for (long e : {1, -1, 2, -2, 3, -3})
        gens.push_back(FpcWord::generator(static_cast<int>(i), e));
    } else {
      for (long e = 1; e < p; ++e) gens.push_back(FpcWord::generator(static_cast<int>(i), e));
    }
  }
  for (int depth = 0; depth < max_syllables; ++depth) {
    std::vector<FpcWord> next;
    for (const FpcWord& w : frontier) {
      for (const FpcWord& s : gens) {
        FpcWord nw = mul(src, w, s);
        if (nw.letters.size() <= w.letters.size()) continue;  // only grow
        if (!nw.is_identity() && h.apply(nw).is_identity()) return {Verdict::No, nw};
        next.push_back(nw);
      }
    }
    frontier = std::move(next);
    if (frontier.size() > 20000) break;
  }
  return {Verdict::Unknown, std::nullopt};
}

SubgroupEnumeration enumerate_subgroup(const FpcGroup& g,
                                       const std::vector<FpcWord>& generators,
                                       std::size_t cap, int max_depth) {
  SubgroupEnumeration out;
  std::map<std::vector<FpcLetter>, std::size_t> seen;
  std::vector<std::pair<FpcWord, FpcWord>> frontier;  // (element, expression)
  auto add = [&](const FpcWord& el, const FpcWord& expr) {
    auto [it, fresh] = seen.emplace(el.letters, out.elements.size());
    if (!fresh) return false;
    out.elements.push_back({el, expr});
    frontier.push_back({el, expr});
    return true;
  };
  FpcGroup expr_group;  // free group on the generators, used only as a carrier
  expr_group.factor_orders.assign(generators.size(), 0);
  add(FpcWord::identity(), FpcWord::identity());
  bool grew = true;
  int depth = 0;
  while (grew && depth < max_depth && out.elements.size() <= cap) {
    grew = false;
    std::vector<std::pair<FpcWord, FpcWord>> current;
    current.swap(frontier);
    for (const auto& [el, expr] : current) {
      for (std::size_t i = 0; i < generators.size(); ++i) {
        for (int sign : {1, -1}) {
          FpcWord nel = mul(g, el, sign > 0 ? generators[i] : inv(g, generators[i]));
          FpcWord nexpr =
              mul(expr_group, expr, FpcWord::generator(static_cast<int>(i), sign));
          if (add(nel, nexpr)) grew = true;
          if (out.elements.size() > cap) break;
        }
        if (out.elements.size() > cap) break;
      }
      if (out.elements.size() > cap) break;
    }
    ++depth;
  }
  out.complete = !grew && out.elements.size() <= cap;
  return out;
}

std::vector<FpcWord> enumerate_group(const FpcGroup& g) {
  if (g.order() == 0) throw error("enumerate_group: group is infinite");
  std::vector<FpcWord> out = {FpcWord::identity()};
  if (g.factor_count() == 1)
    for (long e = 1; e < g.factor_orders[0]; ++e) out.push_back(FpcWord::generator(0, e));
  return out;
}

}  // namespace orbfold
