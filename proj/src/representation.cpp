#include "fimalg/representation.hpp"

#include <map>

#include "fimalg/rational_series.hpp"

namespace fimalg {

TruncatedRep::TruncatedRep(long T, long d, std::vector<ExactMatrix> components)
    : T_(T), d_(d), comps_(std::move(components)) {
  if (T < 0 || d < 1 || comps_.size() != static_cast<std::size_t>(T + 1))
    throw ShapeMismatch("truncated representation needs T+1 components");
  for (long n = 0; n <= T; ++n) {
    const auto& c = comps_[static_cast<std::size_t>(n)];
    auto size = static_cast<std::size_t>(d * (n + 1));
    if (c.rows() != size || c.cols() != size)
      throw ShapeMismatch("component " + std::to_string(n) + " has shape " + c.shape());
  }
}

TruncatedRep TruncatedRep::identity(long T, long d) { return scalar(Rational(1), T, d); }

TruncatedRep TruncatedRep::zero(long T, long d) { return scalar(Rational(0), T, d); }

TruncatedRep TruncatedRep::scalar(const Rational& c, long T, long d) {
  return central(std::vector<Rational>(static_cast<std::size_t>(T + 1), c), T, d);
}

TruncatedRep TruncatedRep::central(const std::vector<Rational>& coeffs, long T, long d) {
  if (coeffs.size() < static_cast<std::size_t>(T + 1)) throw ShapeMismatch("too few central coefficients");
  std::vector<ExactMatrix> comps;
  comps.reserve(static_cast<std::size_t>(T + 1));
  for (long n = 0; n <= T; ++n) {
    auto size = static_cast<std::size_t>(d * (n + 1));
    comps.push_back(ExactMatrix::identity(size).scaled(coeffs[static_cast<std::size_t>(n)]));
  }
  return {T, d, std::move(comps)};
}

bool TruncatedRep::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const ExactMatrix& m) { return m.is_zero(); });
}

TruncatedRep TruncatedRep::adjoint() const {
  std::vector<ExactMatrix> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.adjoint());
  return {T_, d_, std::move(out)};
}

TruncatedRep TruncatedRep::inverse() const {
  std::vector<ExactMatrix> out;
  out.reserve(comps_.size());
  for (std::size_t n = 0; n < comps_.size(); ++n) {
    const auto& c = comps_[n];
    try {
      out.push_back(is_unipotent(c) ? unipotent_inverse(c) : fimalg::inverse(c));
    } catch (const SingularMatrix&) {
      throw SingularComponent(static_cast<long>(n), "component " + std::to_string(n) + " is singular");
    }
  }
  return {T_, d_, std::move(out)};
}

long TruncatedRep::first_difference(const TruncatedRep& o) const {
  check_compatible(o);
  for (std::size_t n = 0; n < comps_.size(); ++n)
    if (!(comps_[n] == o.comps_[n])) return static_cast<long>(n);
  return -1;
}

long TruncatedRep::last_nonzero() const {
  for (std::size_t n = comps_.size(); n-- > 0;)
    if (!comps_[n].is_zero()) return static_cast<long>(n);
  return -1;
}

void TruncatedRep::check_compatible(const TruncatedRep& o) const {
  if (T_ != o.T_ || d_ != o.d_)
    throw ShapeMismatch("truncations differ: (T=" + std::to_string(T_) + ", d=" + std::to_string(d_) +
                        ") vs (T=" + std::to_string(o.T_) + ", d=" + std::to_string(o.d_) + ")");
}

TruncatedRep& TruncatedRep::operator+=(const TruncatedRep& o) {
  check_compatible(o);
  for (std::size_t n = 0; n < comps_.size(); ++n) comps_[n] += o.comps_[n];
  return *this;
}

TruncatedRep& TruncatedRep::operator-=(const TruncatedRep& o) {
  check_compatible(o);
  for (std::size_t n = 0; n < comps_.size(); ++n) comps_[n] -= o.comps_[n];
  return *this;
}

TruncatedRep operator-(const TruncatedRep& a) { return Rational(-1) * a; }

TruncatedRep operator*(const TruncatedRep& a, const TruncatedRep& b) {
  a.check_compatible(b);
  std::vector<ExactMatrix> out;
  out.reserve(a.comps_.size());
  for (std::size_t n = 0; n < a.comps_.size(); ++n) out.push_back(a.comps_[n] * b.comps_[n]);
  return {a.T_, a.d_, std::move(out)};
}

TruncatedRep operator*(const Rational& c, const TruncatedRep& a) {
  std::vector<ExactMatrix> out;
  out.reserve(a.comps_.size());
  for (const auto& m : a.comps_) out.push_back(m.scaled(c));
  return {a.T_, a.d_, std::move(out)};
}

ExactMatrix monomial_component(const MunnTriple& t, long n) {
  // Column j (1-based) maps to row j + end when the reversed walk from j stays
  // inside [1, n+1].
  auto size = static_cast<std::size_t>(n + 1);
  ExactMatrix m(size, size);
  for (long j = std::max(1L, 1 + t.hi - t.end); j + t.end - t.lo <= n + 1; ++j)
    m.set(static_cast<std::size_t>(j + t.end - 1), static_cast<std::size_t>(j - 1), Rational(1));
  return m;
}

ExactMatrix represent_component(const AlgebraElem& a, long n) {
  auto size = static_cast<std::size_t>(n + 1);
  std::vector<std::map<std::size_t, Rational>> rows(size);
  for (const auto& [t, c] : a.terms()) {
    for (long j = std::max(1L, 1 + t.hi - t.end); j + t.end - t.lo <= n + 1; ++j) {
      auto& slot = rows[static_cast<std::size_t>(j + t.end - 1)][static_cast<std::size_t>(j - 1)];
      slot += c;
    }
  }
  ExactMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    ExactMatrix::Row r;
    for (auto& [j, v] : rows[i])
      if (!v.is_zero()) r.emplace_back(j, std::move(v));
    m.set_row(i, std::move(r));
  }
  return m;
}

TruncatedRep represent(const AlgebraElem& a, long T) {
  if (T < 0) throw std::invalid_argument("truncation must be >= 0");
  std::vector<ExactMatrix> comps;
  comps.reserve(static_cast<std::size_t>(T + 1));
  for (long n = 0; n <= T; ++n) comps.push_back(represent_component(a, n));
  return {T, 1, std::move(comps)};
}

TruncatedRep represent_matrix(const std::vector<std::vector<AlgebraElem>>& m, long T) {
  const auto d = static_cast<long>(m.size());
  if (d == 0) throw ShapeMismatch("empty matrix over A");
  for (const auto& row : m)
    if (static_cast<long>(row.size()) != d) throw ShapeMismatch("matrix over A must be square");
  std::vector<ExactMatrix> comps;
  for (long n = 0; n <= T; ++n) {
    auto b = static_cast<std::size_t>(n + 1);
    ExactMatrix c(b * static_cast<std::size_t>(d), b * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (!m[i][j].is_zero()) c.place_block(i * b, j * b, represent_component(m[i][j], n));
    comps.push_back(std::move(c));
  }
  return {T, d, std::move(comps)};
}

std::vector<std::size_t> rank_sequence(const TruncatedRep& r) {
  std::vector<std::size_t> out;
  out.reserve(r.components().size());
  for (const auto& c : r.components()) out.push_back(rank(c));
  return out;
}

Rational component_weight(long n) { return Rational::pow2(-(n + 2)); }

Rational rank_tail(long T) { return Rational(T + 3) * Rational::pow2(-(T + 2)); }

std::optional<RankPattern> detect_pattern(const std::vector<std::size_t>& ranks, long d, long max_period) {
  const auto count = static_cast<long>(ranks.size());
  if (count == 0) return std::nullopt;
  const long T = count - 1;
  for (long N = 1; N <= max_period; ++N) {
    for (long n0 = 0; n0 <= T / 2; ++n0) {
      RankPattern p{n0, N, {}};
      bool ok = true;
      for (long r = 0; r < N && ok; ++r) {
        long first = n0 + ((r - n0 % N) % N + N) % N;
        if (first + 2 * N > T) {
          ok = false;
          break;
        }
        auto at = [&](long n) { return Rational(static_cast<long>(ranks[static_cast<std::size_t>(n)])); };
        Rational alpha = (at(first + N) - at(first)) / Rational(N);
        Rational beta = at(first) - alpha * Rational(first + 1);
        if (alpha.sign() < 0 || alpha > Rational(d)) {
          ok = false;
          break;
        }
        for (long n = first; n <= T && ok; n += N) ok = at(n) == alpha * Rational(n + 1) + beta;
        p.residues.emplace_back(alpha, beta);
      }
      if (ok) return p;
    }
  }
  return std::nullopt;
}

Rational pattern_sum(const std::vector<std::size_t>& ranks, const RankPattern& p) {
  Rational total(0);
  for (long n = 0; n < p.n0; ++n)
    total += Rational(static_cast<long>(ranks.at(static_cast<std::size_t>(n)))) * component_weight(n);
  const Rational q = Rational::pow2(-p.period);
  const Rational one(1);
  for (long r = 0; r < p.period; ++r) {
    long first = p.n0 + ((r - p.n0 % p.period) % p.period + p.period) % p.period;
    const auto& [alpha, beta] = p.residues[static_cast<std::size_t>(r)];
    // sum_{k>=0} (alpha (first+1+kN) + beta) 2^{-(first+2)} q^k
    Rational s = (alpha * Rational(first + 1) + beta) / (one - q) +
                 alpha * Rational(p.period) * q / ((one - q) * (one - q));
    total += component_weight(first) * s;
  }
  return total;
}

RankResult vn_rank(const TruncatedRep& r) {
  RankResult out;
  out.T = r.T();
  out.d = r.d();
  out.ranks = rank_sequence(r);
  for (long n = 0; n <= r.T(); ++n)
    out.partial += Rational(static_cast<long>(out.ranks[static_cast<std::size_t>(n)])) * component_weight(n);
  out.tail_bound = Rational(r.d()) * rank_tail(r.T());
  out.pattern = detect_pattern(out.ranks, r.d());
  if (out.pattern) {
    Rational v = pattern_sum(out.ranks, *out.pattern);
    if (out.encloses(v))
      out.exact = v;
    else
      out.pattern.reset();
  }
  return out;
}

TruncatedRep localize_inverse(const Polynomial& f, long T) {
  if (!f.coeff(0).is_one()) throw std::invalid_argument("localize_inverse needs f(0) = 1");
  return represent(eval_poly(f, AlgebraElem::s()), T).inverse();
}

TruncatedRep adjoint_inverse(const Polynomial& f, long T) {
  if (!f.coeff(0).is_one()) throw std::invalid_argument("adjoint_inverse needs f(0) = 1");
  return represent(eval_poly(f, AlgebraElem::s()), T).adjoint().inverse();
}

std::vector<Polynomial> inverse_formula_polys(const Polynomial& f) {
  const long n = f.degree();
  std::vector<Polynomial> out;
  for (long i = 0; i < n; ++i) {
    Polynomial p;
    for (long j = 0; j <= i; ++j)
      p -= Polynomial::monomial(static_cast<std::size_t>(i - j), f.coeff(static_cast<std::size_t>(n - j)));
    out.push_back(p);
  }
  return out;
}

InverseFormulaReport verify_inverse_formula(const Polynomial& f, long T) {
  if (f.degree() < 1) throw std::invalid_argument("inverse formula needs deg f >= 1");
  if (!f.coeff(0).is_one()) throw std::invalid_argument("inverse formula needs f(0) = 1");
  InverseFormulaReport rep;
  const long n = f.degree();
  rep.degree = n;
  rep.T = T;

  const AlgebraElem s = AlgebraElem::s();
  const AlgebraElem s_star = AlgebraElem::s_star();
  const AlgebraElem gap = AlgebraElem::one() - s * s_star;  // 1 - ss*
  const Polynomial f1 = f.conj().reversed();
  const auto polys = inverse_formula_polys(f);

  // Polynomial form, entirely inside A.
  AlgebraElem poly_rhs = pow(s, static_cast<unsigned>(n)) * eval_poly(f, s).star();
  for (long i = 0; i < n; ++i)
    poly_rhs -= pow(s, static_cast<unsigned>(i)) * gap * eval_poly(polys[static_cast<std::size_t>(i)], s).star();
  const TruncatedRep poly_diff = represent(eval_poly(f1, s) - poly_rhs, T);

  // Inverse form.
  const TruncatedRep f1_inv = represent(eval_poly(f1, s), T).inverse();
  const TruncatedRep fstar_inv = adjoint_inverse(f, T);
  TruncatedRep rhs = f1_inv * represent(pow(s, static_cast<unsigned>(n)), T);
  for (long i = 0; i < n; ++i) {
    AlgebraElem mid = pow(s, static_cast<unsigned>(i)) * gap * eval_poly(polys[static_cast<std::size_t>(i)], s).star();
    rhs -= f1_inv * represent(mid, T) * fstar_inv;
  }

  rep.inverse_holds.resize(static_cast<std::size_t>(T + 1));
  rep.polynomial_holds.resize(static_cast<std::size_t>(T + 1));
  for (long m = 0; m <= T; ++m) {
    auto k = static_cast<std::size_t>(m);
    rep.inverse_holds[k] = fstar_inv.component(m) == rhs.component(m);
    rep.polynomial_holds[k] = poly_diff.component(m).is_zero();
  }
  rep.least_from = T + 1;
  for (long m = T; m >= 0; --m) {
    auto k = static_cast<std::size_t>(m);
    if (!(rep.inverse_holds[k] && rep.polynomial_holds[k])) break;
    rep.least_from = m;
  }
  rep.ok = rep.least_from <= n;
  return rep;
}

BasisProbeReport basis_independence_probe(long i, long k, long j, const Polynomial& f, long T) {
  if (i < 0 || k < 0 || j < 0) throw std::invalid_argument("probe indices must be >= 0");
  if (!f.coeff(0).is_one()) throw std::invalid_argument("probe needs f(0) = 1");
  BasisProbeReport rep{i, k, j, f, {}, true};
  const AlgebraElem s = AlgebraElem::s();
  const AlgebraElem s_star = AlgebraElem::s_star();
  const TruncatedRep left = represent(pow(s_star, static_cast<unsigned>(i)) * (AlgebraElem::one() - s_star * s) *
                                          pow(s, static_cast<unsigned>(j)),
                                      T);
  const TruncatedRep right = represent((AlgebraElem::one() - s * s_star) * pow(s_star, static_cast<unsigned>(k)), T);
  const TruncatedRep b = left * localize_inverse(f, T) * right;
  const auto beta = inverse_coeffs(f, static_cast<std::size_t>(T + 1));
  for (long n = 0; n <= T; ++n) {
    auto size = static_cast<std::size_t>(n + 1);
    ExactMatrix expect(size, size);
    long row = n + 1 - i, col = k + 1;
    if (n >= j && row >= 1 && col <= n + 1)
      expect.set(static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1),
                 beta[static_cast<std::size_t>(n - j)]);
    bool ok = b.component(n) == expect;
    rep.holds.push_back(ok);
    rep.ok = rep.ok && ok;
  }
  return rep;
}

}  // namespace fimalg
