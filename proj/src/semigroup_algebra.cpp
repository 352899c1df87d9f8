#include "fimalg/semigroup_algebra.hpp"

#include <mutex>
#include <stdexcept>

namespace fimalg {

AlgebraElem::AlgebraElem(Rational c) {
  if (!c.is_zero()) terms_.emplace(MunnTriple::identity(), std::move(c));
}

AlgebraElem::AlgebraElem(const MunnTriple& t, Rational c) {
  if (!t.valid()) throw std::invalid_argument("invalid Munn triple");
  if (!c.is_zero()) terms_.emplace(t, std::move(c));
}

AlgebraElem AlgebraElem::monomial(long k, long l, long m) {
  return AlgebraElem(from_normal(NormalWord::make(k, l, m)));
}

Rational AlgebraElem::coeff(const MunnTriple& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgebraElem::add_term(const MunnTriple& t, const Rational& c) {
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  } else if (c.is_zero()) {
    terms_.erase(it);
  }
}

AlgebraElem AlgebraElem::star() const {
  AlgebraElem r;
  for (const auto& [t, c] : terms_) r.terms_.emplace(fimalg::star(t), c.conj());
  return r;
}

long AlgebraElem::width() const {
  long w = 0;
  for (const auto& [t, c] : terms_) w = std::max({w, -t.lo, t.hi});
  return w;
}

std::string AlgebraElem::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [t, c] : terms_) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (out.empty())
      out += c.sign() < 0 ? "-" : "";
    else
      out += c.sign() < 0 ? " - " : " + ";
    if (t.is_identity()) {
      out += mag.str();
    } else {
      if (!mag.is_one()) out += mag.str() + " ";
      out += to_string(t);
    }
  }
  return out;
}

AlgebraElem& AlgebraElem::operator+=(const AlgebraElem& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

AlgebraElem& AlgebraElem::operator-=(const AlgebraElem& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, -c);
  return *this;
}

AlgebraElem& AlgebraElem::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

AlgebraElem operator*(const AlgebraElem& a, const AlgebraElem& b) {
  AlgebraElem r;
  for (const auto& [ta, ca] : a.terms_)
    for (const auto& [tb, cb] : b.terms_) r.add_term(ta * tb, ca * cb);
  return r;
}

AlgebraElem pow(const AlgebraElem& a, unsigned e) {
  AlgebraElem r = AlgebraElem::one();
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

AlgebraElem eval_poly(const Polynomial& f, const AlgebraElem& x) {
  AlgebraElem acc;
  const auto& c = f.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + AlgebraElem(*it);
  return acc;
}

namespace {

std::mutex memo_mutex;
std::map<std::pair<long, long>, AlgebraElem> q_memo;
std::map<long, AlgebraElem> h_memo;

AlgebraElem range_proj(long i) { return AlgebraElem::monomial(i, i, 0); }       // s^i s*^i
AlgebraElem source_proj(long j) { return AlgebraElem::monomial(0, j, j); }      // s*^j s^j

}  // namespace

const AlgebraElem& q_proj(long i, long j) {
  if (i < 0 || j < 0) throw std::invalid_argument("q_proj needs i, j >= 0");
  std::lock_guard lock(memo_mutex);
  auto it = q_memo.find({i, j});
  if (it != q_memo.end()) return it->second;
  AlgebraElem q = (range_proj(i) - range_proj(i + 1)) * (source_proj(j) - source_proj(j + 1));
  return q_memo.emplace(std::make_pair(i, j), std::move(q)).first->second;
}

const AlgebraElem& h_proj(long n) {
  if (n < 0) throw std::invalid_argument("h_proj needs n >= 0");
  {
    std::lock_guard lock(memo_mutex);
    auto it = h_memo.find(n);
    if (it != h_memo.end()) return it->second;
  }
  AlgebraElem h;
  for (long i = 0; i <= n; ++i) h += q_proj(i, n - i);
  std::lock_guard lock(memo_mutex);
  return h_memo.emplace(n, std::move(h)).first->second;
}

AlgebraElem h_matrix_unit(long n, long a, long b) {
  if (n < 0 || a < 1 || b < 1 || a > n + 1 || b > n + 1)
    throw std::invalid_argument("matrix unit index out of range");
  const AlgebraElem& diag = q_proj(b - 1, n - b + 1);
  if (a >= b) return pow(AlgebraElem::s(), static_cast<unsigned>(a - b)) * diag;
  return pow(AlgebraElem::s_star(), static_cast<unsigned>(b - a)) * diag;
}

bool is_socle_supported(const AlgebraElem& a, long T) {
  AlgebraElem sum;
  for (long n = 0; n <= T; ++n) sum += h_proj(n) * a;
  return sum == a;
}

bool idempotent_ge(const AlgebraElem& e, const AlgebraElem& f) { return e * f == f && f * e == f; }

}  // namespace fimalg
