#include "diolab/value.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>

namespace diolab {

namespace {

// mpq view of a cpp_rational, RAII.
struct MpqTmp {
  mpq_t q;
  explicit MpqTmp(const Rat& r) {
    mpq_init(q);
    if (mpq_set_str(q, rat_to_string(r).c_str(), 10) != 0)
      throw std::runtime_error("mpq_set_str failed");
    mpq_canonicalize(q);
  }
  ~MpqTmp() { mpq_clear(q); }
};

void set_from_rat(mpfr_t out, const Rat& r, mpfr_rnd_t rnd) {
  MpqTmp t(r);
  mpfr_set_q(out, t.q, rnd);
}

}  // namespace

FloatInterval::FloatInterval(unsigned prec) : prec_(prec) {
  if (prec < 2) throw std::domain_error("FloatInterval: precision < 2 bits");
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

FloatInterval::FloatInterval(const FloatInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

FloatInterval::FloatInterval(FloatInterval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, 2);
  mpfr_init2(hi_, 2);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

FloatInterval& FloatInterval::operator=(const FloatInterval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.prec_);
    mpfr_set_prec(hi_, o.prec_);
    prec_ = o.prec_;
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

FloatInterval& FloatInterval::operator=(FloatInterval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

FloatInterval::~FloatInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

FloatInterval FloatInterval::from_rat(const Rat& r, unsigned prec) {
  if (r < 0) throw std::domain_error("FloatInterval: negative value");
  FloatInterval out(prec);
  set_from_rat(out.lo_, r, MPFR_RNDD);
  set_from_rat(out.hi_, r, MPFR_RNDU);
  return out;
}

FloatInterval FloatInterval::add(const FloatInterval& o) const {
  FloatInterval out(std::max(prec_, o.prec_));
  mpfr_add(out.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, o.hi_, MPFR_RNDU);
  return out;
}

FloatInterval FloatInterval::mul(const FloatInterval& o) const {
  // Valid because both operands are nonnegative.
  FloatInterval out(std::max(prec_, o.prec_));
  mpfr_mul(out.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(out.hi_, hi_, o.hi_, MPFR_RNDU);
  return out;
}

FloatInterval FloatInterval::div(const FloatInterval& o) const {
  if (mpfr_sgn(o.lo_) <= 0) throw std::domain_error("FloatInterval::div: divisor may be zero");
  FloatInterval out(std::max(prec_, o.prec_));
  mpfr_div(out.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_div(out.hi_, hi_, o.lo_, MPFR_RNDU);
  return out;
}

FloatInterval FloatInterval::max(const FloatInterval& o) const {
  FloatInterval out(std::max(prec_, o.prec_));
  mpfr_max(out.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, hi_, o.hi_, MPFR_RNDU);
  return out;
}

FloatInterval FloatInterval::pow_rat(const Rat& e) const {
  if (e == 0) return from_rat(1, prec_);
  if (mpfr_sgn(lo_) <= 0 && e < 0)
    throw std::domain_error("FloatInterval::pow_rat: negative exponent at zero");
  FloatInterval out(prec_);
  mpfr_t elo, ehi, cand;
  mpfr_init2(elo, prec_);
  mpfr_init2(ehi, prec_);
  mpfr_init2(cand, prec_);
  set_from_rat(elo, e, MPFR_RNDD);
  set_from_rat(ehi, e, MPFR_RNDU);
  // Four corners with outward rounding; monotonicity depends on the sign of
  // the exponent and base vs 1, so take min/max over all of them.
  bool first = true;
  for (int bi = 0; bi < 2; ++bi) {
    for (int ei = 0; ei < 2; ++ei) {
      const mpfr_t& b = bi ? hi_ : lo_;
      const mpfr_t& ex = ei ? ehi : elo;
      mpfr_pow(cand, b, ex, MPFR_RNDD);
      if (first || mpfr_cmp(cand, out.lo_) < 0) mpfr_set(out.lo_, cand, MPFR_RNDD);
      mpfr_pow(cand, b, ex, MPFR_RNDU);
      if (first || mpfr_cmp(cand, out.hi_) > 0) mpfr_set(out.hi_, cand, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(elo);
  mpfr_clear(ehi);
  mpfr_clear(cand);
  return out;
}

FloatInterval FloatInterval::root(unsigned k) const {
  if (k == 0) throw std::domain_error("FloatInterval::root: k = 0");
  FloatInterval out(prec_);
  mpfr_rootn_ui(out.lo_, lo_, k, MPFR_RNDD);
  mpfr_rootn_ui(out.hi_, hi_, k, MPFR_RNDU);
  return out;
}

std::optional<bool> FloatInterval::less_than(const Rat& r) const {
  MpqTmp t(r);
  if (mpfr_cmp_q(hi_, t.q) < 0) return true;
  if (mpfr_cmp_q(lo_, t.q) >= 0) return false;
  return std::nullopt;
}

std::optional<bool> FloatInterval::less_equal(const Rat& r) const {
  MpqTmp t(r);
  if (mpfr_cmp_q(hi_, t.q) <= 0) return true;
  if (mpfr_cmp_q(lo_, t.q) > 0) return false;
  return std::nullopt;
}

double FloatInterval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double FloatInterval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double FloatInterval::mid_d() const {
  mpfr_t mid;
  mpfr_init2(mid, prec_);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
  double out = mpfr_get_d(mid, MPFR_RNDN);
  mpfr_clear(mid);
  return out;
}

double FloatInterval::err_d() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double width = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  double m = std::abs(mid_d());
  // Width covers the enclosure; the second term covers double conversion.
  return width + m * 1e-15 + 1e-300;
}

const Rat& Value::rat() const {
  if (!exact()) throw std::logic_error("Value::rat: not exact");
  return std::get<Rat>(v_);
}

const FloatInterval& Value::interval() const {
  if (exact()) throw std::logic_error("Value::interval: exact value");
  return std::get<FloatInterval>(v_);
}

FloatInterval Value::to_interval(unsigned prec) const {
  if (exact()) return FloatInterval::from_rat(rat(), prec);
  return interval();
}

Value operator+(const Value& a, const Value& b) {
  if (a.exact() && b.exact()) return Value(a.rat() + b.rat());
  unsigned p = std::max(a.exact() ? kDefaultPrec : a.interval().prec(),
                        b.exact() ? kDefaultPrec : b.interval().prec());
  return Value(a.to_interval(p).add(b.to_interval(p)));
}

Value operator*(const Value& a, const Value& b) {
  if (a.exact() && b.exact()) return Value(a.rat() * b.rat());
  if (a.exact() && a.rat() == 0) return Value(Rat(0));
  if (b.exact() && b.rat() == 0) return Value(Rat(0));
  unsigned p = std::max(a.exact() ? kDefaultPrec : a.interval().prec(),
                        b.exact() ? kDefaultPrec : b.interval().prec());
  return Value(a.to_interval(p).mul(b.to_interval(p)));
}

Value Value::div(const Value& o) const {
  if (exact() && o.exact()) {
    if (o.rat() == 0) throw std::domain_error("Value::div: zero divisor");
    return Value(rat() / o.rat());
  }
  if (exact() && rat() == 0) return Value(Rat(0));
  unsigned p = std::max(exact() ? kDefaultPrec : interval().prec(),
                        o.exact() ? kDefaultPrec : o.interval().prec());
  return Value(to_interval(p).div(o.to_interval(p)));
}

Value Value::max(const Value& a, const Value& b) {
  if (a.exact() && b.exact()) return Value(std::max(a.rat(), b.rat()));
  // An enclosure strictly dominated by (or dominating) the other operand can
  // keep the exact representation.
  if (a.exact()) {
    auto le = b.less_equal(a.rat());
    if (le && *le) return a;
  }
  if (b.exact()) {
    auto le = a.less_equal(b.rat());
    if (le && *le) return b;
  }
  unsigned p = std::max(a.exact() ? kDefaultPrec : a.interval().prec(),
                        b.exact() ? kDefaultPrec : b.interval().prec());
  return Value(a.to_interval(p).max(b.to_interval(p)));
}

Value Value::pow_int(long e) const {
  if (e == 0) return Value(Rat(1));
  if (exact()) {
    const Rat& r = rat();
    if (e < 0) {
      if (r == 0) throw std::domain_error("Value::pow_int: negative power of zero");
      return Value(rat_pow(Rat(1) / r, static_cast<unsigned>(-e)));
    }
    return Value(rat_pow(r, static_cast<unsigned>(e)));
  }
  return Value(interval().pow_rat(Rat(e)));
}

Value Value::pow_rat(const Rat& e, unsigned prec) const {
  Int den = rat_den(e);
  if (den == 1) return pow_int(static_cast<long>(rat_num(e)));
  if (exact()) {
    const Rat& r = rat();
    if (r == 0) {
      if (e <= 0) throw std::domain_error("Value::pow_rat: nonpositive exponent at zero");
      return Value(Rat(0));
    }
    // r^(a/b): exact when r^a has an exact b-th root.
    Int a = rat_num(e);
    bool neg = a < 0;
    Rat base = rat_pow(r, static_cast<unsigned>(neg ? -a : a));
    if (neg) base = Rat(1) / base;
    auto root = rat_kth_root_exact(base, static_cast<unsigned>(den));
    if (root) return Value(*root);
    return Value(FloatInterval::from_rat(r, prec).pow_rat(e));
  }
  return Value(interval().pow_rat(e));
}

Value Value::root(unsigned k, unsigned prec) const {
  if (k == 0) throw std::domain_error("Value::root: k = 0");
  if (k == 1) return *this;
  if (exact()) {
    auto r = rat_kth_root_exact(rat(), k);
    if (r) return Value(*r);
    return Value(FloatInterval::from_rat(rat(), prec).root(k));
  }
  return Value(interval().root(k));
}

std::optional<bool> Value::less_than(const Rat& r) const {
  if (exact()) return rat() < r;
  return interval().less_than(r);
}

std::optional<bool> Value::less_equal(const Rat& r) const {
  if (exact()) return rat() <= r;
  return interval().less_equal(r);
}

bool Value::is_zero() const { return exact() && rat() == 0; }

double Value::approx() const {
  if (exact()) return rat_to_double(rat());
  return interval().mid_d();
}

double Value::abs_error() const {
  if (exact()) return 0.0;
  return interval().err_d();
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace diolab
