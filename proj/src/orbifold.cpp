#include "orbfold/orbifold.hpp"

#include <algorithm>
#include <numeric>

namespace orbfold {

void OrbifoldSpec::validate() const {
  if (genus < 0) throw error("orbifold genus must be nonnegative");
  if (!orientable && genus == 0) throw error("non-orientable orbifold needs >= 1 crosscap");
  if (boundary_count < 0) throw error("boundary count must be nonnegative");
  for (long p : cone_orders)
    if (p < 2) throw error("cone orders must be >= 2");
}

OrbifoldPresentation presentation(const OrbifoldSpec& spec) {
  spec.validate();
  OrbifoldPresentation pres;
  long p = spec.orientable ? 2 * spec.genus : spec.genus;
  long q = spec.boundary_count;
  long r = spec.cone_count();
  pres.a_count = static_cast<int>(p);
  pres.t_count = static_cast<int>(q);
  pres.s_count = static_cast<int>(r);
  for (long i = 1; i <= p; ++i) pres.generators.push_back("a" + std::to_string(i));
  for (long j = 1; j <= q; ++j) pres.generators.push_back("t" + std::to_string(j));
  for (long i = 1; i <= r; ++i) pres.generators.push_back("s" + std::to_string(i));

  for (long i = 0; i < r; ++i)
    pres.relators.push_back({FpcLetter{pres.gen_s(static_cast<int>(i)), spec.cone_orders[static_cast<std::size_t>(i)]}});

  // R s_1..s_r (t_1..t_q)^-1
  std::vector<FpcLetter> longrel;
  if (spec.orientable) {
    for (int i = 0; i + 1 < p; i += 2) {
      longrel.push_back({pres.gen_a(i), 1});
      longrel.push_back({pres.gen_a(i + 1), 1});
      longrel.push_back({pres.gen_a(i), -1});
      longrel.push_back({pres.gen_a(i + 1), -1});
    }
  } else {
    for (int i = 0; i < p; ++i) longrel.push_back({pres.gen_a(i), 2});
  }
  for (int i = 0; i < r; ++i) longrel.push_back({pres.gen_s(i), 1});
  for (int j = static_cast<int>(q) - 1; j >= 0; --j) longrel.push_back({pres.gen_t(j), -1});
  pres.relators.push_back(longrel);

  if (q >= 1) {
    std::vector<long> orders;
    for (long i = 0; i < p; ++i) orders.push_back(0);
    for (long j = 0; j + 1 < q; ++j) orders.push_back(0);
    for (long i = 0; i < r; ++i) orders.push_back(spec.cone_orders[static_cast<std::size_t>(i)]);
    FpcGroup model(orders);
    auto model_a = [&](int i) { return FpcWord::generator(i); };
    auto model_t = [&](int j) { return FpcWord::generator(static_cast<int>(p) + j); };
    auto model_s = [&](int i) { return FpcWord::generator(static_cast<int>(p + q) - 1 + i); };
    std::vector<FpcWord> images;
    for (int i = 0; i < p; ++i) images.push_back(model_a(i));
    for (int j = 0; j + 1 < q; ++j) images.push_back(model_t(j));
    // t_q = (t_1...t_{q-1})^-1 R s_1...s_r
    FpcWord tq = FpcWord::identity();
    for (int j = static_cast<int>(q) - 2; j >= 0; --j)
      tq = mul(model, tq, inv(model, model_t(j)));
    if (spec.orientable) {
      for (int i = 0; i + 1 < p; i += 2) {
        FpcWord comm = mul(model, mul(model, model_a(i), model_a(i + 1)),
                           mul(model, inv(model, model_a(i)), inv(model, model_a(i + 1))));
        tq = mul(model, tq, comm);
      }
    } else {
      for (int i = 0; i < p; ++i) tq = mul(model, tq, pow(model, model_a(i), 2));
    }
    for (int i = 0; i < r; ++i) tq = mul(model, tq, model_s(i));
    images.push_back(tq);
    for (int i = 0; i < r; ++i) images.push_back(model_s(i));
    pres.fpc_model = model;
    pres.generator_images = images;
  }
  return pres;
}

bool is_moebius(const OrbifoldSpec& spec) {
  return !spec.orientable && spec.genus == 1 && spec.boundary_count == 1 &&
         spec.cone_orders.empty();
}

bool is_small(const OrbifoldSpec& spec) {
  if (is_moebius(spec)) return true;
  if (!spec.orientable || spec.genus != 0) return false;
  long q = spec.boundary_count;
  long r = spec.cone_count();
  if (q < 1 || r > 2) return false;
  if (q == 1 && r != 2) return false;
  return true;
}

bool is_sufficiently_large(const OrbifoldSpec& spec) {
  if (!spec.closed()) return false;
  if (spec.orientable && spec.genus == 0) return spec.cone_count() >= 4;   // S^2
  if (!spec.orientable && spec.genus == 1) return spec.cone_count() >= 2;  // RP^2
  return true;
}

std::vector<std::vector<FpcLetter>> standard_tuple(const OrbifoldSpec& spec,
                                                   const StandardTupleRequest& req) {
  spec.validate();
  long p = spec.orientable ? 2 * spec.genus : spec.genus;
  long q = spec.boundary_count;
  long r = spec.cone_count();
  long qprime = static_cast<long>(req.boundary_indices.size());
  long rprime = static_cast<long>(req.cone_indices.size());
  // (S1); a closed orbifold without cone points admits only the a-tuple
  long wanted = std::max<long>(q + r - 1, 0);
  if (qprime + rprime != wanted)
    throw error("standard tuple violates (S1): q'+r' = " + std::to_string(qprime + rprime) +
                ", expected " + std::to_string(wanted));
  // (S2)
  for (std::size_t k = 0; k < req.boundary_indices.size(); ++k) {
    int j = req.boundary_indices[k];
    if (j < 1 || j > q) throw error("standard tuple violates (S2): boundary index out of range");
    if (k > 0 && req.boundary_indices[k - 1] >= j)
      throw error("standard tuple violates (S2): boundary indices not increasing");
  }
  for (std::size_t k = 0; k < req.cone_indices.size(); ++k) {
    int i = req.cone_indices[k];
    if (i < 1 || i > r) throw error("standard tuple violates (S2): cone index out of range");
    if (k > 0 && req.cone_indices[k - 1] >= i)
      throw error("standard tuple violates (S2): cone indices not increasing");
  }
  // (S3)
  if (req.exponents.size() != req.cone_indices.size())
    throw error("standard tuple needs one exponent per cone index");
  for (std::size_t k = 0; k < req.cone_indices.size(); ++k) {
    long nu = req.exponents[k];
    long pi = spec.cone_orders[static_cast<std::size_t>(req.cone_indices[k] - 1)];
    if (nu < 1) throw error("standard tuple violates (S3): exponent must be positive");
    if (std::gcd(nu, pi) != 1)
      throw error("standard tuple violates (S3): exponent not coprime to the cone order");
  }
  OrbifoldPresentation pres = presentation(spec);
  std::vector<std::vector<FpcLetter>> tuple;
  for (int i = 0; i < p; ++i) tuple.push_back({FpcLetter{pres.gen_a(i), 1}});
  for (int j : req.boundary_indices) tuple.push_back({FpcLetter{pres.gen_t(j - 1), 1}});
  for (std::size_t k = 0; k < req.cone_indices.size(); ++k)
    tuple.push_back({FpcLetter{pres.gen_s(req.cone_indices[k] - 1), req.exponents[k]}});
  return tuple;
}

std::vector<FpcWord> standard_tuple_in_model(const OrbifoldSpec& spec,
                                             const StandardTupleRequest& req) {
  OrbifoldPresentation pres = presentation(spec);
  if (!pres.fpc_model) throw error("standard_tuple_in_model needs a nonempty boundary");
  auto tuple = standard_tuple(spec, req);
  std::vector<FpcWord> out;
  for (const auto& word : tuple) {
    FpcWord w = FpcWord::identity();
    for (const FpcLetter& l : word)
      w = mul(*pres.fpc_model, w,
              pow(*pres.fpc_model, pres.generator_images[static_cast<std::size_t>(l.factor)],
                  l.exp));
    out.push_back(w);
  }
  return out;
}

}  // namespace orbfold
