#include "fimalg/rational_series.hpp"

#include <algorithm>
#include <sstream>

#include "fimalg/exact_linalg.hpp"

namespace fimalg {

namespace {

// Berlekamp-Massey over Q: connection polynomial C (C(0) = 1) and length L
// of the shortest recurrence generating s.
std::pair<std::vector<Rational>, std::size_t> berlekamp_massey(const std::vector<Rational>& s) {
  std::vector<Rational> c{Rational(1)}, b{Rational(1)};
  std::size_t len = 0, m = 1;
  Rational bd(1);
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rational d = s[n];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d += c[i] * s[n - i];
    if (d.is_zero()) {
      ++m;
      continue;
    }
    std::vector<Rational> t = c;
    Rational f = d / bd;
    if (c.size() < b.size() + m) c.resize(b.size() + m, Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) c[i + m] -= f * b[i];
    if (2 * len <= n) {
      len = n + 1 - len;
      b = std::move(t);
      bd = d;
      m = 1;
    } else {
      ++m;
    }
  }
  return {c, len};
}

Polynomial truncate(const Polynomial& p, std::size_t n) {
  std::vector<Rational> c = p.coeffs();
  if (c.size() > n) c.resize(n);
  return Polynomial(std::move(c));
}

}  // namespace

RationalSeries::RationalSeries(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("series denominator is zero");
  // Cancel common powers of x.
  while (den_.coeff(0).is_zero()) {
    if (!num_.is_zero() && !num_.coeff(0).is_zero())
      throw std::invalid_argument("series " + str() + " has a pole at 0");
    auto strip = [](const Polynomial& p) {
      if (p.is_zero()) return p;
      std::vector<Rational> c(p.coeffs().begin() + 1, p.coeffs().end());
      return Polynomial(std::move(c));
    };
    num_ = strip(num_);
    den_ = strip(den_);
  }
  Rational c0 = den_.coeff(0);
  if (!c0.is_one()) {
    Rational inv = c0.inverse();
    num_ = num_ * Polynomial(inv);
    den_ = den_ * Polynomial(inv);
  }
  if (num_.is_zero()) den_ = Polynomial(1);
}

RationalSeries RationalSeries::hadamard_unit() { return {Polynomial(1), Polynomial::parse("1 - x")}; }

RationalSeries RationalSeries::from_prefix(const std::vector<Rational>& prefix) {
  auto [c, len] = berlekamp_massey(prefix);
  Polynomial den(c);
  std::vector<Rational> head(prefix.begin(), prefix.begin() + static_cast<long>(std::min(len, prefix.size())));
  Polynomial num = truncate(den * Polynomial(head), len);
  return {num, den};
}

std::size_t RationalSeries::complexity() const {
  long dq = den_.degree();
  long dp = num_.degree();
  return static_cast<std::size_t>(std::max(dq, dp + 1));
}

Rational RationalSeries::coeff(std::size_t n) const { return coeffs(n + 1).back(); }

std::vector<Rational> RationalSeries::coeffs(std::size_t count) const {
  std::vector<Rational> a;
  a.reserve(count);
  const auto& q = den_.coeffs();
  for (std::size_t n = 0; n < count; ++n) {
    Rational v = num_.coeff(n);
    for (std::size_t i = 1; i < q.size() && i <= n; ++i)
      if (!q[i].is_zero()) v -= q[i] * a[n - i];
    a.push_back(std::move(v));
  }
  return a;
}

RationalSeries RationalSeries::minimized() const {
  if (is_zero()) return {};
  return from_prefix(coeffs(2 * complexity()));
}

std::string RationalSeries::str() const {
  if (den_ == Polynomial(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalSeries operator-(const RationalSeries& a) { return {-a.num_, a.den_}; }

RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) { return a + (-b); }

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalSeries operator*(const Rational& c, const RationalSeries& a) { return {Polynomial(c) * a.num_, a.den_}; }

bool operator==(const RationalSeries& a, const RationalSeries& b) {
  // The difference has complexity at most L_a + L_b.
  std::size_t n = a.complexity() + b.complexity();
  return a.coeffs(n) == b.coeffs(n);
}

RationalSeries hadamard(const RationalSeries& a, const RationalSeries& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::size_t n = 2 * a.complexity() * b.complexity();
  auto ca = a.coeffs(n);
  auto cb = b.coeffs(n);
  std::vector<Rational> prod(n);
  for (std::size_t i = 0; i < n; ++i) prod[i] = ca[i] * cb[i];
  return RationalSeries::from_prefix(prod);
}

std::size_t hankel_rank(const RationalSeries& a, std::size_t k) {
  auto c = a.coeffs(2 * k);
  ExactMatrix h(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) h.set(i, j, c[i + j]);
  return rank(h);
}

std::vector<Rational> inverse_coeffs(const Polynomial& f, std::size_t count) {
  if (!f.coeff(0).is_one()) throw std::invalid_argument("inverse_coeffs needs f(0) = 1");
  return RationalSeries(Polynomial(1), f).coeffs(count);
}

bool QuasiPeriodicSet::contains(std::size_t n) const {
  if (n < start) return finite.count(n) > 0;
  return residues.count(n % period) > 0;
}

std::string QuasiPeriodicSet::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::size_t f : finite) {
    os << (first ? "" : ", ") << f;
    first = false;
  }
  os << "}";
  if (!residues.empty()) {
    os << " u {n >= " << start << " : n mod " << period << " in {";
    first = true;
    for (std::size_t r : residues) {
      os << (first ? "" : ", ") << r;
      first = false;
    }
    os << "}}";
  }
  return os.str();
}

bool ZeroSetResult::fully_certified() const {
  return std::all_of(classes.begin(), classes.end(), [](const ClassCertificate& c) { return c.certified; });
}

ZeroSetResult zero_set(const RationalSeries& a, std::size_t period_bound, std::size_t scan_window) {
  if (period_bound == 0) throw std::invalid_argument("period bound must be positive");
  ZeroSetResult out;
  RationalSeries m = a.minimized();
  if (m.is_zero()) {
    out.set.residues = {0};
    out.classes.push_back({0, true, true, 0, 0});
    return out;
  }
  // a_n = e^T A^n v for all n >= 0 with A of size L, so each subsequence
  // a_{k + jN} obeys the characteristic polynomial of A^N (order L).
  const std::size_t L = m.complexity();
  out.complexity = L;
  std::size_t W = scan_window;
  if (W == 0) W = std::max<std::size_t>(64, (L + 3) * period_bound + 4 * L + 32);
  out.window = W;
  const auto c = m.coeffs(W);
  std::vector<char> z(W);
  for (std::size_t i = 0; i < W; ++i) z[i] = c[i].is_zero();

  for (std::size_t N = 1; N <= period_bound && N < W; ++N) {
    std::size_t n0 = 0;
    for (std::size_t i = W - N; i-- > 0;) {
      if (z[i] != z[i + N]) {
        n0 = i + 1;
        break;
      }
    }
    if (n0 + (L + 2) * N > W) continue;

    QuasiPeriodicSet set;
    set.start = n0;
    set.period = N;
    for (std::size_t i = 0; i < n0; ++i)
      if (z[i]) set.finite.insert(i);
    for (std::size_t k = 0; k < N; ++k) {
      std::size_t first = n0 + ((k + N - n0 % N) % N);
      ClassCertificate cert;
      cert.residue = k;
      cert.first_index = first;
      cert.zero = z[first];
      if (cert.zero) {
        set.residues.insert(k);
        cert.checked_terms = L;
        cert.certified = true;
        for (std::size_t j = 0; j < L; ++j) cert.certified = cert.certified && z[first + j * N];
      } else {
        // Nonzero: certified when a_{first + jN} = c r^j on L + 1 terms.
        cert.checked_terms = L + 1;
        const Rational& b0 = c[first];
        Rational r = c[first + N] / b0;
        bool geometric = !r.is_zero();
        Rational expect = b0;
        for (std::size_t j = 0; j <= L && geometric; ++j) {
          geometric = c[first + j * N] == expect;
          expect *= r;
        }
        cert.certified = geometric;
      }
      out.classes.push_back(cert);
    }
    out.set = std::move(set);
    return out;
  }
  throw PeriodBoundExceeded("no zero-set period <= " + std::to_string(period_bound) +
                            " fits " + std::to_string(W) + " coefficients of " + a.str());
}

RationalSeries support_idempotent(const QuasiPeriodicSet& z) {
  const Polynomial period_den = Polynomial(1) - Polynomial::monomial(z.period);
  Polynomial num;
  for (std::size_t k : z.residues) {
    std::size_t first = z.start + ((k + z.period - z.start % z.period) % z.period);
    num += Polynomial::monomial(first);
  }
  for (std::size_t f : z.finite) num += Polynomial::monomial(f) * period_den;
  return RationalSeries(num, period_den).minimized();
}

RationalSeries support_idempotent(const RationalSeries& a, std::size_t period_bound) {
  return support_idempotent(zero_set(a, period_bound).set);
}

QFraction::QFraction(RationalSeries num, RationalSeries den, std::size_t period_bound)
    : num_(std::move(num)), den_(std::move(den)) {
  if (!zero_set(den_, period_bound).set.empty())
    throw std::invalid_argument("fraction denominator " + den_.str() + " has zero coefficients");
}

QFraction QFraction::from_series(const RationalSeries& a) {
  return {a, RationalSeries::hadamard_unit(), Unchecked{}};
}

Rational QFraction::coeff(std::size_t n) const { return num_.coeff(n) / den_.coeff(n); }

QFraction operator*(const QFraction& p, const QFraction& q) {
  return {hadamard(p.num_, q.num_), hadamard(p.den_, q.den_), QFraction::Unchecked{}};
}

QFraction operator+(const QFraction& p, const QFraction& q) {
  return {hadamard(p.num_, q.den_) + hadamard(q.num_, p.den_), hadamard(p.den_, q.den_),
          QFraction::Unchecked{}};
}

bool q_equal(const QFraction& p, const QFraction& q) {
  return hadamard(p.num(), q.den()) == hadamard(q.num(), p.den());
}

QFraction q_quasi_inverse(const QFraction& p, std::size_t period_bound) {
  RationalSeries e = support_idempotent(p.num(), period_bound);
  RationalSeries num = hadamard(RationalSeries::hadamard_unit() - e, p.den());
  return QFraction(num, p.num() + e, period_bound);
}

}  // namespace fimalg
