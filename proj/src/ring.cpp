#include "strongj/ring.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>

namespace strongj {

namespace {

std::uint64_t initial_bound() {
  if (const char* env = std::getenv("STRONGJ_BOUND")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v >= 2) return v;
  }
  return 4096;
}

std::atomic<std::uint64_t> g_bound{initial_bound()};

// Hard cap on the carrier size of a materialized ring.
constexpr std::uint64_t kMaxOrder = 1u << 20;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::uint64_t default_bound() { return g_bound.load(); }
void set_default_bound(std::uint64_t bound) { g_bound.store(bound); }

// --- Elem --------------------------------------------------------------------

Elem FiniteRing::elem(std::uint32_t i) const {
  if (i >= order_) throw RingError("element index " + std::to_string(i) + " out of range for " + spec_);
  return Elem(this, i);
}

namespace {
void require_same_ring(Elem a, Elem b) {
  if (a.ring == nullptr || a.ring != b.ring)
    throw RingError("elements belong to different rings");
}
}  // namespace

Elem operator+(Elem a, Elem b) {
  require_same_ring(a, b);
  return Elem(a.ring, a.ring->add(a.idx, b.idx));
}
Elem operator-(Elem a, Elem b) {
  require_same_ring(a, b);
  return Elem(a.ring, a.ring->sub(a.idx, b.idx));
}
Elem operator*(Elem a, Elem b) {
  require_same_ring(a, b);
  return Elem(a.ring, a.ring->mul(a.idx, b.idx));
}
Elem operator-(Elem a) { return Elem(a.ring, a.ring->neg(a.idx)); }

// --- FiniteRing base ---------------------------------------------------------

FiniteRing::FiniteRing(RingKind kind, std::uint64_t order, std::string spec)
    : kind_(kind), order_(static_cast<std::uint32_t>(order)), spec_(std::move(spec)) {
  if (order < 2) throw RingError("ring must contain at least 0 and 1: " + spec_);
  if (order > kMaxOrder)
    throw BoundExceeded("ring order " + std::to_string(order) + " exceeds the construction cap for " + spec_);
}

void FiniteRing::finalize() {
  one_raw_ = raw_one();
  if (order_ <= 1024) {
    std::size_t n = order_;
    add_tab_.resize(n * n);
    mul_tab_.resize(n * n);
    neg_tab_.resize(n);
    // Fill through the fix() wrappers, then the tables become the fast path.
    for (std::uint32_t a = 0; a < order_; ++a) {
      neg_tab_[a] = static_cast<std::uint16_t>(unfix(raw_neg(fix(a))));
      for (std::uint32_t b = 0; b < order_; ++b) {
        add_tab_[n * a + b] = static_cast<std::uint16_t>(unfix(raw_add(fix(a), fix(b))));
        mul_tab_[n * a + b] = static_cast<std::uint16_t>(unfix(raw_mul(fix(a), fix(b))));
      }
    }
  }
  if (order_ <= 1024) {
    commutative_ = true;
    for (std::uint32_t a = 0; a < order_ && commutative_; ++a)
      for (std::uint32_t b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) {
          commutative_ = false;
          break;
        }
    if (commutative_ != commutative_hint())
      throw RingError("commutativity mismatch for " + spec_);
  } else {
    commutative_ = commutative_hint();
  }
  verify_axioms();
}

void FiniteRing::verify_axioms() const {
  auto check = [&](bool ok, const char* what) {
    if (!ok) throw RingError(std::string("ring axiom violated (") + what + ") in " + spec_);
  };
  for (std::uint32_t a = 0; a < order_; ++a) {
    check(add(a, 0) == a, "additive identity");
    check(add(a, neg(a)) == 0, "additive inverse");
    check(mul(a, 1) == a && mul(1, a) == a, "multiplicative identity");
  }
  auto triple = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    check(add(a, b) == add(b, a), "additive commutativity");
    check(add(add(a, b), c) == add(a, add(b, c)), "additive associativity");
    check(mul(mul(a, b), c) == mul(a, mul(b, c)), "multiplicative associativity");
    check(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), "left distributivity");
    check(mul(add(a, b), c) == add(mul(a, c), mul(b, c)), "right distributivity");
  };
  if (order_ <= 256) {
    for (std::uint32_t a = 0; a < order_; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        for (std::uint32_t c = 0; c < order_; ++c) triple(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<std::uint32_t> pick(0, order_ - 1);
    for (int i = 0; i < 4096; ++i) triple(pick(rng), pick(rng), pick(rng));
  }
}

std::uint32_t FiniteRing::pow(std::uint32_t a, std::uint64_t n) const {
  std::uint32_t result = 1;
  std::uint32_t base = a;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

void FiniteRing::require_square_bound(const char* what) const {
  if (order_ > default_bound())
    throw BoundExceeded(std::string(what) + " needs an |R|^2 sweep; order " +
                        std::to_string(order_) + " of " + spec_ + " exceeds the bound " +
                        std::to_string(default_bound()));
}

void FiniteRing::compute_units() const {
  if (units_done_) return;
  require_square_bound("units");
  unit_mask_.assign(order_, false);
  inverse_.assign(order_, UINT32_MAX);
  for (std::uint32_t u = 0; u < order_; ++u) {
    for (std::uint32_t v = 0; v < order_; ++v) {
      if (mul(u, v) == 1) {
        if (mul(v, u) != 1)
          throw RingError("one-sided inverse in a finite ring: " + spec_);
        unit_mask_[u] = true;
        inverse_[u] = v;
        break;
      }
    }
    if (unit_mask_[u]) units_.push_back(u);
  }
  units_done_ = true;
}

const std::vector<std::uint32_t>& FiniteRing::units() const {
  compute_units();
  return units_;
}

const std::vector<bool>& FiniteRing::unit_mask() const {
  compute_units();
  return unit_mask_;
}

std::optional<std::uint32_t> FiniteRing::inverse(std::uint32_t a) const {
  compute_units();
  if (inverse_[a] == UINT32_MAX) return std::nullopt;
  return inverse_[a];
}

void FiniteRing::compute_radical() const {
  if (radical_done_) return;
  compute_units();
  radical_mask_.assign(order_, false);
  for (std::uint32_t j = 0; j < order_; ++j) {
    bool quasi_regular = true;
    for (std::uint32_t r = 0; r < order_; ++r) {
      if (!unit_mask_[sub(1, mul(r, j))]) {
        quasi_regular = false;
        break;
      }
    }
    if (quasi_regular) {
      radical_mask_[j] = true;
      radical_.push_back(j);
    }
  }
  for (std::uint32_t j : radical_) one_plus_radical_.push_back(add(1, j));
  std::sort(one_plus_radical_.begin(), one_plus_radical_.end());
  radical_done_ = true;
}

const std::vector<std::uint32_t>& FiniteRing::jacobson_radical() const {
  compute_radical();
  return radical_;
}

const std::vector<bool>& FiniteRing::radical_mask() const {
  compute_radical();
  return radical_mask_;
}

const std::vector<std::uint32_t>& FiniteRing::one_plus_radical() const {
  compute_radical();
  return one_plus_radical_;
}

const std::vector<std::uint32_t>& FiniteRing::idempotents() const {
  if (!idempotents_done_) {
    for (std::uint32_t e = 0; e < order_; ++e)
      if (mul(e, e) == e) idempotents_.push_back(e);
    idempotents_done_ = true;
  }
  return idempotents_;
}

bool FiniteRing::is_local() const {
  if (!local_) {
    compute_units();
    std::vector<std::uint32_t> nonunits;
    for (std::uint32_t a = 0; a < order_; ++a)
      if (!unit_mask_[a]) nonunits.push_back(a);
    bool closed = true;
    for (std::uint32_t a : nonunits) {
      for (std::uint32_t b : nonunits) {
        if (unit_mask_[add(a, b)]) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    local_ = closed;
  }
  return *local_;
}

bool FiniteRing::is_wb_ring() const {
  if (!wb_) {
    compute_radical();
    std::uint64_t cost = std::uint64_t(radical_.size()) * one_plus_radical_.size() * order_;
    if (order_ > default_bound() || cost > (std::uint64_t(1) << 32))
      throw BoundExceeded("wb-ring check too large for " + spec_);
    bool wb = true;
    std::vector<bool> image(order_);
    auto surjective = [&](std::uint32_t s, std::uint32_t t) {
      // x -> s*x - x*t
      std::fill(image.begin(), image.end(), false);
      std::uint32_t count = 0;
      for (std::uint32_t x = 0; x < order_ && count < order_; ++x) {
        std::uint32_t y = sub(mul(s, x), mul(x, t));
        if (!image[y]) {
          image[y] = true;
          ++count;
        }
      }
      return count == order_;
    };
    for (std::uint32_t a : radical_) {
      for (std::uint32_t b : one_plus_radical_) {
        if (!surjective(a, b) || !surjective(b, a)) {
          wb = false;
          break;
        }
      }
      if (!wb) break;
    }
    wb_ = wb;
  }
  return *wb_;
}

bool FiniteRing::has_only_trivial_idempotents() const {
  for (std::uint32_t e : idempotents())
    if (e != 0 && e != 1) return false;
  return true;
}

bool FiniteRing::is_directly_finite() const {
  if (!directly_finite_) {
    require_square_bound("directly-finite check");
    bool df = true;
    for (std::uint32_t a = 0; a < order_ && df; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        if (mul(a, b) == 1 && mul(b, a) != 1) {
          df = false;
          break;
        }
    directly_finite_ = df;
  }
  return *directly_finite_;
}

std::optional<std::vector<std::uint32_t>> FiniteRing::structural_radical() const {
  auto raw = raw_structural_radical();
  if (!raw) return std::nullopt;
  std::vector<std::uint32_t> out;
  out.reserve(raw->size());
  for (std::uint32_t i : *raw) out.push_back(unfix(i));
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteRing::is_nilpotent(std::uint32_t a) const { return nilpotency_index(a).has_value(); }

std::optional<std::uint32_t> FiniteRing::nilpotency_index(std::uint32_t a) const {
  // Finite rings bound the index by the order.
  std::uint32_t p = a;
  for (std::uint32_t n = 1; n <= order_; ++n) {
    if (p == 0) return n;
    p = mul(p, a);
  }
  return std::nullopt;
}

std::optional<std::uint32_t> FiniteRing::parse_element(std::string_view text) const {
  std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  if (auto raw = raw_parse(s)) return unfix(*raw);
  // Bare canonical index.
  bool digits = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
  if (digits) {
    std::uint64_t v = std::strtoull(std::string(s).c_str(), nullptr, 10);
    if (v < order_) return static_cast<std::uint32_t>(v);
  }
  return std::nullopt;
}

// --- memoization -------------------------------------------------------------

namespace {

RingPtr memoized(const std::string& spec, const std::function<RingPtr()>& build) {
  static std::map<std::string, std::weak_ptr<const FiniteRing>> cache;
  auto it = cache.find(spec);
  if (it != cache.end()) {
    if (auto r = it->second.lock()) return r;
  }
  RingPtr r = build();
  cache[r->spec()] = r;
  if (r->spec() != spec) cache[spec] = r;
  return r;
}

// --- polynomial helpers over a commutative ring ------------------------------

using Poly = std::vector<std::uint32_t>;  // ascending coefficients, canonical indices

Poly poly_trim(const FiniteRing& b, Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  (void)b;
  return p;
}

// Remainder of a by monic b (deg b >= 1) over a commutative ring.
Poly poly_rem_monic(const FiniteRing& r, Poly a, const Poly& b) {
  std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint32_t c = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = r.sub(a[shift + i], r.mul(c, b[i]));
    a.pop_back();
  }
  return poly_trim(r, a);
}

// Trial-division irreducibility over a field base.
bool poly_irreducible(const FiniteRing& field, const Poly& g) {
  std::size_t d = g.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  std::uint32_t q = field.order();
  // Enumerate monic divisors of degree 1..d/2 by ascending coefficient code.
  for (std::size_t dd = 1; dd <= d / 2; ++dd) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dd; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly h(dd + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dd; ++i) {
        h[i] = static_cast<std::uint32_t>(c % q);
        c /= q;
      }
      h[dd] = 1;
      if (poly_rem_monic(field, g, h).empty()) return false;
    }
  }
  return true;
}

std::string poly_to_string(const FiniteRing& base, const Poly& p, const std::string& var) {
  bool nested = base.kind() == RingKind::PolyQuotient || base.kind() == RingKind::GaloisField;
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    std::string coeff = base.format(p[i]);
    if (nested && coeff.size() > 1) coeff = "(" + coeff + ")";
    std::string term;
    if (i == 0) {
      term = coeff;
    } else {
      std::string power = (i == 1) ? var : var + "^" + std::to_string(i);
      term = (p[i] == 1) ? power : coeff + "*" + power;
    }
    if (!out.empty()) out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

// Splits s on top-level occurrences of sep (depth tracked over (), [] ).
std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

std::optional<Poly> poly_parse(const FiniteRing& base, std::string_view text,
                               const std::string& var) {
  std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  Poly p;
  auto set_coeff = [&](std::size_t i, std::uint32_t c) {
    if (p.size() <= i) p.resize(i + 1, 0);
    p[i] = base.add(p[i], c);
  };
  for (std::string_view part : split_top_level(s, '+')) {
    part = trim(part);
    if (part.empty()) return std::nullopt;
    // Forms: coeff | var | var^k | coeff*var | coeff*var^k  (coeff may be
    // parenthesized).
    std::size_t deg = 0;
    std::string_view coeff_text = part;
    auto var_pos = std::string_view::npos;
    // Find top-level occurrence of the variable.
    int depth = 0;
    for (std::size_t i = 0; i < part.size(); ++i) {
      char c = part[i];
      if (c == '(' || c == '[') ++depth;
      else if (c == ')' || c == ']') --depth;
      else if (depth == 0 && part.compare(i, var.size(), var) == 0) {
        var_pos = i;
        break;
      }
    }
    if (var_pos == std::string_view::npos) {
      deg = 0;
    } else {
      std::string_view tail = part.substr(var_pos + var.size());
      tail = trim(tail);
      if (tail.empty()) {
        deg = 1;
      } else if (tail.front() == '^') {
        tail.remove_prefix(1);
        std::uint64_t d = 0;
        if (tail.empty()) return std::nullopt;
        for (char c : tail) {
          if (c < '0' || c > '9') return std::nullopt;
          d = d * 10 + (c - '0');
        }
        deg = static_cast<std::size_t>(d);
      } else {
        return std::nullopt;
      }
      coeff_text = trim(part.substr(0, var_pos));
      if (!coeff_text.empty() && coeff_text.back() == '*')
        coeff_text = trim(coeff_text.substr(0, coeff_text.size() - 1));
    }
    std::uint32_t coeff;
    if (var_pos != std::string_view::npos && coeff_text.empty()) {
      coeff = 1;
    } else {
      std::string_view ct = coeff_text;
      if (ct.size() >= 2 && ct.front() == '(' && ct.back() == ')')
        ct = trim(ct.substr(1, ct.size() - 2));
      auto c = base.parse_element(ct);
      if (!c) return std::nullopt;
      coeff = *c;
    }
    set_coeff(deg, coeff);
  }
  return p;
}

// --- ring kinds ---------------------------------------------------------------

class ZmodRing final : public FiniteRing {
 public:
  explicit ZmodRing(std::uint64_t n)
      : FiniteRing(RingKind::Modular, n, "Z/" + std::to_string(n)), n_(static_cast<std::uint32_t>(n)) {
    finalize();
  }

 protected:
  std::uint32_t raw_add(std::uint32_t a, std::uint32_t b) const override {
    std::uint32_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const override {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % n_);
  }
  std::uint32_t raw_neg(std::uint32_t a) const override { return a == 0 ? 0 : n_ - a; }
  std::uint32_t raw_one() const override { return 1; }
  bool commutative_hint() const override { return true; }
  std::string raw_format(std::uint32_t a) const override { return std::to_string(a); }
  std::optional<std::uint32_t> raw_parse(std::string_view s) const override {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
      s = trim(s);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return std::nullopt;
    std::uint64_t v = std::strtoull(std::string(s).c_str(), nullptr, 10) % n_;
    return negative ? raw_neg(static_cast<std::uint32_t>(v)) : static_cast<std::uint32_t>(v);
  }
  std::optional<std::vector<std::uint32_t>> raw_structural_radical() const override {
    // J(Z/n) = (rad n) where rad n is the product of the distinct primes of n.
    std::uint32_t n = n_, rad = 1;
    for (std::uint32_t p = 2; std::uint64_t(p) * p <= n; ++p) {
      if (n % p == 0) {
        rad *= p;
        while (n % p == 0) n /= p;
      }
    }
    if (n > 1) rad *= n;
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < n_; x += rad) out.push_back(x);
    return out;
  }

 private:
  std::uint32_t n_;
};

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) {
    r *= b;
    if (r > (std::uint64_t(1) << 40)) return r;  // caller range-checks
  }
  return r;
}

class PolyQuotientRing final : public FiniteRing {
 public:
  PolyQuotientRing(RingKind kind, std::string spec, RingPtr base, Poly modulus)
      : FiniteRing(kind, ipow(base->order(), static_cast<std::uint32_t>(modulus.size() - 1)),
                   std::move(spec)),
        base_(std::move(base)),
        mod_(std::move(modulus)),
        d_(static_cast<std::uint32_t>(mod_.size() - 1)),
        b_(base_->order()) {
    finalize();
  }

  const RingPtr& base() const { return base_; }
  const Poly& modulus() const { return mod_; }
  std::vector<std::uint32_t> decode(std::uint32_t raw) const {
    std::vector<std::uint32_t> c(d_);
    for (std::uint32_t i = 0; i < d_; ++i) {
      c[i] = raw % b_;
      raw /= b_;
    }
    return c;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint32_t raw = 0;
    for (std::uint32_t i = d_; i-- > 0;) raw = raw * b_ + (i < c.size() ? c[i] : 0);
    return raw;
  }

 protected:
  std::uint32_t raw_add(std::uint32_t a, std::uint32_t b) const override {
    std::uint32_t out = 0, m = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
      out += base_->add(a % b_, b % b_) * m;
      a /= b_;
      b /= b_;
      m *= b_;
    }
    return out;
  }
  std::uint32_t raw_neg(std::uint32_t a) const override {
    std::uint32_t out = 0, m = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
      out += base_->neg(a % b_) * m;
      a /= b_;
      m *= b_;
    }
    return out;
  }
  std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const override {
    std::vector<std::uint32_t> ca = decode(a), cb = decode(b);
    std::vector<std::uint32_t> prod(2 * d_ - 1, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
      if (ca[i] == 0) continue;
      for (std::uint32_t j = 0; j < d_; ++j)
        prod[i + j] = base_->add(prod[i + j], base_->mul(ca[i], cb[j]));
    }
    // Reduce by the monic modulus.
    for (std::uint32_t k = 2 * d_ - 2; k >= d_ && k < prod.size(); --k) {
      std::uint32_t c = prod[k];
      if (c != 0)
        for (std::uint32_t i = 0; i <= d_; ++i)
          prod[k - d_ + i] = base_->sub(prod[k - d_ + i], base_->mul(c, mod_[i]));
    }
    prod.resize(d_);
    return encode(prod);
  }
  std::uint32_t raw_one() const override { return 1; }
  bool commutative_hint() const override { return true; }
  std::string raw_format(std::uint32_t a) const override {
    return poly_to_string(*base_, decode(a), "t");
  }
  std::optional<std::uint32_t> raw_parse(std::string_view s) const override {
    auto p = poly_parse(*base_, s, "t");
    if (!p || p->size() > d_) return std::nullopt;
    return encode(*p);
  }
  std::optional<std::vector<std::uint32_t>> raw_structural_radical() const override {
    bool base_is_field = base_->units().size() + 1 == base_->order();
    bool mod_is_power_of_t =
        std::all_of(mod_.begin(), mod_.end() - 1, [](std::uint32_t c) { return c == 0; });
    std::vector<std::uint32_t> out;
    if (base_is_field && poly_irreducible(*base_, mod_)) {
      out.push_back(0);
      return out;
    }
    if (mod_is_power_of_t) {
      // t is nilpotent, so J = { f : f(0) in J(base) }.
      const auto& jb = base_->radical_mask();
      for (std::uint32_t raw = 0; raw < order(); ++raw)
        if (jb[raw % b_]) out.push_back(raw);
      return out;
    }
    return std::nullopt;
  }

 private:
  RingPtr base_;
  Poly mod_;
  std::uint32_t d_, b_;
};

class UpperTriRing final : public FiniteRing {
 public:
  explicit UpperTriRing(RingPtr base)
      : FiniteRing(RingKind::UpperTriangular,
                   std::uint64_t(base->order()) * base->order() * base->order(),
                   "T2(" + base->spec() + ")"),
        base_(std::move(base)),
        n_(base_->order()) {
    finalize();
  }

  const RingPtr& base() const { return base_; }

 protected:
  // raw = (a*n + b)*n + d  for [[a, b], [0, d]]
  std::array<std::uint32_t, 3> dec(std::uint32_t raw) const {
    return {raw / (n_ * n_), (raw / n_) % n_, raw % n_};
  }
  std::uint32_t enc(std::uint32_t a, std::uint32_t b, std::uint32_t d) const {
    return (a * n_ + b) * n_ + d;
  }
  std::uint32_t raw_add(std::uint32_t x, std::uint32_t y) const override {
    auto u = dec(x), v = dec(y);
    return enc(base_->add(u[0], v[0]), base_->add(u[1], v[1]), base_->add(u[2], v[2]));
  }
  std::uint32_t raw_neg(std::uint32_t x) const override {
    auto u = dec(x);
    return enc(base_->neg(u[0]), base_->neg(u[1]), base_->neg(u[2]));
  }
  std::uint32_t raw_mul(std::uint32_t x, std::uint32_t y) const override {
    auto u = dec(x), v = dec(y);
    return enc(base_->mul(u[0], v[0]),
               base_->add(base_->mul(u[0], v[1]), base_->mul(u[1], v[2])),
               base_->mul(u[2], v[2]));
  }
  std::uint32_t raw_one() const override { return enc(1, 0, 1); }
  bool commutative_hint() const override { return false; }
  std::string raw_format(std::uint32_t x) const override {
    auto u = dec(x);
    return "[[" + base_->format(u[0]) + "," + base_->format(u[1]) + "],[0," +
           base_->format(u[2]) + "]]";
  }
  std::optional<std::uint32_t> raw_parse(std::string_view s) const override;
  std::optional<std::vector<std::uint32_t>> raw_structural_radical() const override {
    // Strict radical diagonal: a, d in J(base), b arbitrary.
    const auto& jb = base_->radical_mask();
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 0; a < n_; ++a) {
      if (!jb[a]) continue;
      for (std::uint32_t b = 0; b < n_; ++b)
        for (std::uint32_t d = 0; d < n_; ++d)
          if (jb[d]) out.push_back(enc(a, b, d));
    }
    return out;
  }

 private:
  RingPtr base_;
  std::uint32_t n_;
};

// Parses "[[a,b],[c,d]]" into four entry strings.
std::optional<std::array<std::string, 4>> parse_matrix_literal(std::string_view s) {
  s = trim(s);
  if (s.size() < 4 || s.front() != '[' || s.back() != ']') return std::nullopt;
  std::string_view inner = trim(s.substr(1, s.size() - 2));
  auto rows = split_top_level(inner, ',');
  if (rows.size() != 2) return std::nullopt;
  std::array<std::string, 4> out;
  for (int r = 0; r < 2; ++r) {
    std::string_view row = trim(rows[r]);
    if (row.size() < 2 || row.front() != '[' || row.back() != ']') return std::nullopt;
    auto cells = split_top_level(row.substr(1, row.size() - 2), ',');
    if (cells.size() != 2) return std::nullopt;
    out[2 * r] = std::string(trim(cells[0]));
    out[2 * r + 1] = std::string(trim(cells[1]));
  }
  return out;
}

std::optional<std::uint32_t> UpperTriRing::raw_parse(std::string_view s) const {
  auto cells = parse_matrix_literal(s);
  if (!cells) return std::nullopt;
  auto a = base_->parse_element((*cells)[0]);
  auto b = base_->parse_element((*cells)[1]);
  auto c = base_->parse_element((*cells)[2]);
  auto d = base_->parse_element((*cells)[3]);
  if (!a || !b || !c || !d || *c != 0) return std::nullopt;
  return enc(*a, *b, *d);
}

class SkewRing final : public FiniteRing {
 public:
  explicit SkewRing(RingPtr field)
      : FiniteRing(RingKind::SkewTrivial, std::uint64_t(field->order()) * field->order(),
                   "skew(" + display_name(*field) + ")"),
        base_(std::move(field)),
        q_(base_->order()) {
    // sigma = Frobenius x -> x^p where p is the field characteristic.
    std::uint32_t p = char_of(*base_);
    frob_.resize(q_);
    for (std::uint32_t x = 0; x < q_; ++x) frob_[x] = base_->pow(x, p);
    finalize();
  }

  const RingPtr& base() const { return base_; }

  static std::uint32_t char_of(const FiniteRing& f) {
    std::uint32_t c = 1, x = 1;
    while ((x = f.add(x, 1)) != 0) ++c;
    return c + 1;
  }
  static std::string display_name(const FiniteRing& f) {
    if (f.kind() == RingKind::Modular) return "GF(" + std::to_string(f.order()) + ")";
    return f.spec();
  }

 protected:
  // raw = a + q*b  for a + b*u, u*a = sigma(a)*u, u^2 = 0.
  std::uint32_t raw_add(std::uint32_t x, std::uint32_t y) const override {
    return base_->add(x % q_, y % q_) + q_ * base_->add(x / q_, y / q_);
  }
  std::uint32_t raw_neg(std::uint32_t x) const override {
    return base_->neg(x % q_) + q_ * base_->neg(x / q_);
  }
  std::uint32_t raw_mul(std::uint32_t x, std::uint32_t y) const override {
    std::uint32_t a = x % q_, b = x / q_, c = y % q_, d = y / q_;
    return base_->mul(a, c) + q_ * base_->add(base_->mul(a, d), base_->mul(b, frob_[c]));
  }
  std::uint32_t raw_one() const override { return 1; }
  bool commutative_hint() const override {
    // Commutative exactly when the Frobenius is the identity (prime field).
    for (std::uint32_t x = 0; x < q_; ++x)
      if (frob_[x] != x) return false;
    return true;
  }
  std::string raw_format(std::uint32_t x) const override {
    return "(" + base_->format(x % q_) + ")+(" + base_->format(x / q_) + ")u";
  }
  std::optional<std::uint32_t> raw_parse(std::string_view s) const override {
    s = trim(s);
    if (!s.empty() && s.back() == 'u') {
      auto parts = split_top_level(s, '+');
      if (parts.size() == 2) {
        std::string_view pa = trim(parts[0]), pb = trim(parts[1]);
        if (pa.size() >= 2 && pa.front() == '(' && pa.back() == ')' && pb.size() >= 3 &&
            pb.front() == '(' && pb.substr(pb.size() - 2) == ")u") {
          auto a = base_->parse_element(pa.substr(1, pa.size() - 2));
          auto b = base_->parse_element(pb.substr(1, pb.size() - 3));
          if (a && b) return *a + q_ * *b;
        }
      }
      return std::nullopt;
    }
    if (auto a = base_->parse_element(s)) return *a;
    return std::nullopt;
  }
  std::optional<std::vector<std::uint32_t>> raw_structural_radical() const override {
    // R/(u) is the field, so J = field * u.
    std::vector<std::uint32_t> out;
    for (std::uint32_t b = 0; b < q_; ++b) out.push_back(q_ * b);
    return out;
  }

 private:
  RingPtr base_;
  std::uint32_t q_;
  std::vector<std::uint32_t> frob_;
};

class MatrixRingKind final : public FiniteRing {
 public:
  explicit MatrixRingKind(RingPtr base)
      : FiniteRing(RingKind::Matrix,
                   std::uint64_t(base->order()) * base->order() * base->order() * base->order(),
                   "M2(" + base->spec() + ")"),
        base_(std::move(base)),
        n_(base_->order()) {
    finalize();
  }

  const RingPtr& base() const { return base_; }

  std::array<std::uint32_t, 4> dec(std::uint32_t raw) const {
    std::array<std::uint32_t, 4> e;
    e[3] = raw % n_;
    raw /= n_;
    e[2] = raw % n_;
    raw /= n_;
    e[1] = raw % n_;
    e[0] = raw / n_;
    return e;
  }
  std::uint32_t enc(const std::array<std::uint32_t, 4>& e) const {
    return ((e[0] * n_ + e[1]) * n_ + e[2]) * n_ + e[3];
  }

 protected:
  std::uint32_t raw_add(std::uint32_t x, std::uint32_t y) const override {
    auto u = dec(x), v = dec(y);
    return enc({base_->add(u[0], v[0]), base_->add(u[1], v[1]), base_->add(u[2], v[2]),
                base_->add(u[3], v[3])});
  }
  std::uint32_t raw_neg(std::uint32_t x) const override {
    auto u = dec(x);
    return enc({base_->neg(u[0]), base_->neg(u[1]), base_->neg(u[2]), base_->neg(u[3])});
  }
  std::uint32_t raw_mul(std::uint32_t x, std::uint32_t y) const override {
    auto u = dec(x), v = dec(y);
    return enc({base_->add(base_->mul(u[0], v[0]), base_->mul(u[1], v[2])),
                base_->add(base_->mul(u[0], v[1]), base_->mul(u[1], v[3])),
                base_->add(base_->mul(u[2], v[0]), base_->mul(u[3], v[2])),
                base_->add(base_->mul(u[2], v[1]), base_->mul(u[3], v[3]))});
  }
  std::uint32_t raw_one() const override { return enc({1, 0, 0, 1}); }
  bool commutative_hint() const override { return false; }
  std::string raw_format(std::uint32_t x) const override {
    auto u = dec(x);
    return "[[" + base_->format(u[0]) + "," + base_->format(u[1]) + "],[" +
           base_->format(u[2]) + "," + base_->format(u[3]) + "]]";
  }
  std::optional<std::uint32_t> raw_parse(std::string_view s) const override {
    auto cells = parse_matrix_literal(s);
    if (!cells) return std::nullopt;
    std::array<std::uint32_t, 4> e;
    for (int i = 0; i < 4; ++i) {
      auto v = base_->parse_element((*cells)[i]);
      if (!v) return std::nullopt;
      e[i] = *v;
    }
    return enc(e);
  }
  std::optional<std::vector<std::uint32_t>> raw_structural_radical() const override {
    // J(M2(R)) = M2(J(R)).
    const auto& j = base_->jacobson_radical();
    std::vector<std::uint32_t> out;
    out.reserve(j.size() * j.size() * j.size() * j.size());
    for (auto a : j)
      for (auto b : j)
        for (auto c : j)
          for (auto d : j) out.push_back(enc({a, b, c, d}));
    return out;
  }

 private:
  RingPtr base_;
  std::uint32_t n_;
};

class SeriesRing final : public FiniteRing {
 public:
  SeriesRing(RingPtr base, std::uint32_t trunc)
      : FiniteRing(RingKind::Series, ipow(base->order(), trunc + 1),
                   "series(" + base->spec() + ", " + std::to_string(trunc) + ")"),
        base_(std::move(base)),
        n_(trunc),
        b_(base_->order()) {
    finalize();
  }

  const RingPtr& base() const { return base_; }
  std::uint32_t truncation_order() const { return n_; }

  std::vector<std::uint32_t> decode(std::uint32_t raw) const {
    std::vector<std::uint32_t> c(n_ + 1);
    for (std::uint32_t i = 0; i <= n_; ++i) {
      c[i] = raw % b_;
      raw /= b_;
    }
    return c;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint32_t raw = 0;
    for (std::uint32_t i = n_ + 1; i-- > 0;) raw = raw * b_ + (i < c.size() ? c[i] : 0);
    return raw;
  }

 protected:
  std::uint32_t raw_add(std::uint32_t x, std::uint32_t y) const override {
    std::uint32_t out = 0, m = 1;
    for (std::uint32_t i = 0; i <= n_; ++i) {
      out += base_->add(x % b_, y % b_) * m;
      x /= b_;
      y /= b_;
      m *= b_;
    }
    return out;
  }
  std::uint32_t raw_neg(std::uint32_t x) const override {
    std::uint32_t out = 0, m = 1;
    for (std::uint32_t i = 0; i <= n_; ++i) {
      out += base_->neg(x % b_) * m;
      x /= b_;
      m *= b_;
    }
    return out;
  }
  std::uint32_t raw_mul(std::uint32_t x, std::uint32_t y) const override {
    auto cx = decode(x), cy = decode(y);
    std::vector<std::uint32_t> out(n_ + 1, 0);
    for (std::uint32_t i = 0; i <= n_; ++i) {
      if (cx[i] == 0) continue;
      for (std::uint32_t j = 0; i + j <= n_; ++j)
        out[i + j] = base_->add(out[i + j], base_->mul(cx[i], cy[j]));
    }
    return encode(out);
  }
  std::uint32_t raw_one() const override { return 1; }
  bool commutative_hint() const override { return base_->is_commutative(); }
  std::string raw_format(std::uint32_t x) const override {
    auto c = decode(x);
    std::string out = "[";
    for (std::uint32_t i = 0; i <= n_; ++i) {
      if (i) out += ",";
      out += base_->format(c[i]);
    }
    return out + "]";
  }
  std::optional<std::uint32_t> raw_parse(std::string_view s) const override {
    s = trim(s);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
    auto cells = split_top_level(s.substr(1, s.size() - 2), ',');
    if (cells.size() != n_ + 1) return std::nullopt;
    std::vector<std::uint32_t> c(n_ + 1);
    for (std::uint32_t i = 0; i <= n_; ++i) {
      auto v = base_->parse_element(trim(cells[i]));
      if (!v) return std::nullopt;
      c[i] = *v;
    }
    return encode(c);
  }
  std::optional<std::vector<std::uint32_t>> raw_structural_radical() const override {
    // Constant term in J(base): everything above the constant is nilpotent.
    const auto& jb = base_->radical_mask();
    std::vector<std::uint32_t> out;
    for (std::uint32_t raw = 0; raw < order(); ++raw)
      if (jb[raw % b_]) out.push_back(raw);
    return out;
  }

 private:
  RingPtr base_;
  std::uint32_t n_, b_;
};

class ProductRing final : public FiniteRing {
 public:
  ProductRing(RingPtr a, RingPtr b)
      : FiniteRing(RingKind::Product, std::uint64_t(a->order()) * b->order(),
                   a->spec() + " x " + b->spec()),
        a_(std::move(a)),
        b_(std::move(b)),
        n2_(b_->order()) {
    finalize();
  }

  const RingPtr& first() const { return a_; }
  const RingPtr& second() const { return b_; }
  std::pair<std::uint32_t, std::uint32_t> dec(std::uint32_t raw) const {
    return {raw / n2_, raw % n2_};
  }
  std::uint32_t enc(std::uint32_t x, std::uint32_t y) const { return x * n2_ + y; }

 protected:
  std::uint32_t raw_add(std::uint32_t x, std::uint32_t y) const override {
    auto [x1, x2] = dec(x);
    auto [y1, y2] = dec(y);
    return enc(a_->add(x1, y1), b_->add(x2, y2));
  }
  std::uint32_t raw_neg(std::uint32_t x) const override {
    auto [x1, x2] = dec(x);
    return enc(a_->neg(x1), b_->neg(x2));
  }
  std::uint32_t raw_mul(std::uint32_t x, std::uint32_t y) const override {
    auto [x1, x2] = dec(x);
    auto [y1, y2] = dec(y);
    return enc(a_->mul(x1, y1), b_->mul(x2, y2));
  }
  std::uint32_t raw_one() const override { return enc(1, 1); }
  bool commutative_hint() const override {
    return a_->is_commutative() && b_->is_commutative();
  }
  std::string raw_format(std::uint32_t x) const override {
    auto [x1, x2] = dec(x);
    return "(" + a_->format(x1) + "," + b_->format(x2) + ")";
  }
  std::optional<std::uint32_t> raw_parse(std::string_view s) const override {
    s = trim(s);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
    auto cells = split_top_level(s.substr(1, s.size() - 2), ',');
    if (cells.size() != 2) return std::nullopt;
    auto x = a_->parse_element(trim(cells[0]));
    auto y = b_->parse_element(trim(cells[1]));
    if (!x || !y) return std::nullopt;
    return enc(*x, *y);
  }
  std::optional<std::vector<std::uint32_t>> raw_structural_radical() const override {
    std::vector<std::uint32_t> out;
    for (auto x : a_->jacobson_radical())
      for (auto y : b_->jacobson_radical()) out.push_back(enc(x, y));
    return out;
  }

 private:
  RingPtr a_, b_;
  std::uint32_t n2_;
};

class OppositeRingKind final : public FiniteRing {
 public:
  explicit OppositeRingKind(RingPtr base)
      : FiniteRing(RingKind::Opposite, base->order(), "op(" + base->spec() + ")"),
        base_(std::move(base)) {
    finalize();
  }

  const RingPtr& base() const { return base_; }

 protected:
  // The raw space is the base's canonical space; 1 is already at index 1.
  std::uint32_t raw_add(std::uint32_t x, std::uint32_t y) const override {
    return base_->add(x, y);
  }
  std::uint32_t raw_mul(std::uint32_t x, std::uint32_t y) const override {
    return base_->mul(y, x);
  }
  std::uint32_t raw_neg(std::uint32_t x) const override { return base_->neg(x); }
  std::uint32_t raw_one() const override { return 1; }
  bool commutative_hint() const override { return base_->is_commutative(); }
  std::string raw_format(std::uint32_t x) const override { return base_->format(x); }
  std::optional<std::uint32_t> raw_parse(std::string_view s) const override {
    return base_->parse_element(s);
  }
  std::optional<std::vector<std::uint32_t>> raw_structural_radical() const override {
    // J(R^op) = J(R) as element sets.
    return base_->jacobson_radical();
  }

 private:
  RingPtr base_;
};

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace

// --- factories ----------------------------------------------------------------

RingPtr make_zmod(std::uint64_t n) {
  return memoized("Z/" + std::to_string(n), [&] { return std::make_shared<ZmodRing>(n); });
}

RingPtr make_poly_quotient(RingPtr base, std::vector<std::uint32_t> modulus,
                           bool require_irreducible) {
  if (!base->is_commutative())
    throw RingError("polynomial quotients need a commutative base: " + base->spec());
  while (modulus.size() > 1 && modulus.back() == 0) modulus.pop_back();
  if (modulus.size() < 2) throw RingError("modulus polynomial must have degree >= 1");
  std::uint32_t lc = modulus.back();
  if (lc != 1) {
    auto inv = base->inverse(lc);
    if (!inv)
      throw RingError("leading coefficient of the modulus is not a unit in " + base->spec());
    for (auto& c : modulus) c = base->mul(c, *inv);
  }
  if (require_irreducible) {
    bool field = base->units().size() + 1 == base->order();
    if (!field || !poly_irreducible(*base, modulus))
      throw RingError("reducible polynomial supplied where irreducible required over " +
                      base->spec());
  }
  std::string spec =
      base->spec() + "[t]/(" + poly_to_string(*base, modulus, "t") + ")";
  return memoized(spec, [&] {
    return std::make_shared<PolyQuotientRing>(RingKind::PolyQuotient, spec, base, modulus);
  });
}

RingPtr make_galois_field(std::uint64_t p, std::uint32_t k) {
  if (!is_prime(p)) throw ParseError("GF order must be a prime power");
  if (k == 1) return make_zmod(p);
  std::uint64_t q = ipow(p, k);
  std::string spec = "GF(" + std::to_string(q) + ")";
  return memoized(spec, [&]() -> RingPtr {
    RingPtr base = make_zmod(p);
    // Least-index monic irreducible of degree k; this pins GF(4), GF(8),
    // GF(9), GF(25) to t^2+t+1, t^3+t+1, t^2+1, t^2+2 respectively.
    std::uint64_t count = ipow(p, k);
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(k + 1);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[k] = 1;
      if (poly_irreducible(*base, g))
        return std::make_shared<PolyQuotientRing>(RingKind::GaloisField, spec, base, g);
    }
    throw RingError("no irreducible polynomial found");  // unreachable for prime p
  });
}

RingPtr make_upper_triangular(RingPtr base) {
  std::string spec = "T2(" + base->spec() + ")";
  return memoized(spec, [&] { return std::make_shared<UpperTriRing>(base); });
}

RingPtr make_skew_trivial(RingPtr field) {
  bool is_field_kind = field->kind() == RingKind::GaloisField ||
                       (field->kind() == RingKind::Modular && is_prime(field->order()));
  if (!is_field_kind)
    throw RingError("skew trivial extension needs a Galois field, got " + field->spec());
  std::string spec = "skew(" + SkewRing::display_name(*field) + ")";
  return memoized(spec, [&] { return std::make_shared<SkewRing>(field); });
}

RingPtr make_matrix_ring(RingPtr base) {
  std::string spec = "M2(" + base->spec() + ")";
  return memoized(spec, [&] { return std::make_shared<MatrixRingKind>(base); });
}

RingPtr make_series_ring(RingPtr base, std::uint32_t n) {
  std::string spec = "series(" + base->spec() + ", " + std::to_string(n) + ")";
  return memoized(spec, [&] { return std::make_shared<SeriesRing>(base, n); });
}

RingPtr make_product(RingPtr a, RingPtr b) {
  std::string spec = a->spec() + " x " + b->spec();
  return memoized(spec, [&] { return std::make_shared<ProductRing>(a, b); });
}

RingPtr opposite_ring(RingPtr r) {
  if (r->kind() == RingKind::Opposite)
    return static_cast<const OppositeRingKind&>(*r).base();
  std::string spec = "op(" + r->spec() + ")";
  return memoized(spec, [&] { return std::make_shared<OppositeRingKind>(r); });
}

const std::vector<std::string>& builtin_ring_specs() {
  static const std::vector<std::string> specs = {
      "Z/2",           "Z/3",           "Z/4",
      "Z/5",           "Z/8",           "Z/9",
      "Z/16",          "GF(4)",         "GF(8)",
      "GF(9)",         "Z/2[t]/(t^2)",  "Z/2[t]/(t^3)",
      "Z/4[t]/(t^2)",  "skew(GF(4))",   "T2(Z/2)",
      "Z/2 x Z/2",
  };
  return specs;
}

// --- composite accessors --------------------------------------------------------

RingPtr ring_base(const FiniteRing& r) {
  switch (r.kind()) {
    case RingKind::PolyQuotient:
    case RingKind::GaloisField:
      return static_cast<const PolyQuotientRing&>(r).base();
    case RingKind::UpperTriangular:
      return static_cast<const UpperTriRing&>(r).base();
    case RingKind::SkewTrivial:
      return static_cast<const SkewRing&>(r).base();
    case RingKind::Matrix:
      return static_cast<const MatrixRingKind&>(r).base();
    case RingKind::Series:
      return static_cast<const SeriesRing&>(r).base();
    case RingKind::Opposite:
      return static_cast<const OppositeRingKind&>(r).base();
    default:
      return nullptr;
  }
}

std::pair<RingPtr, RingPtr> product_factors(const FiniteRing& r) {
  if (r.kind() != RingKind::Product) throw RingError("not a product ring: " + r.spec());
  const auto& p = static_cast<const ProductRing&>(r);
  return {p.first(), p.second()};
}

namespace {
const MatrixRingKind& as_matrix(const FiniteRing& r) {
  if (r.kind() != RingKind::Matrix) throw RingError("not a matrix ring: " + r.spec());
  return static_cast<const MatrixRingKind&>(r);
}
const SeriesRing& as_series(const FiniteRing& r) {
  if (r.kind() != RingKind::Series) throw RingError("not a series ring: " + r.spec());
  return static_cast<const SeriesRing&>(r);
}
}  // namespace

std::array<std::uint32_t, 4> matrix_entries(const FiniteRing& m2, std::uint32_t idx) {
  const auto& m = as_matrix(m2);
  // fix() is protected; route through parse/format-free arithmetic instead:
  // the canonical<->raw transposition only moves index 1 and raw(I2).
  // We recover entries by decoding the raw code.
  return m.dec(idx == 1 ? m.enc({1, 0, 0, 1}) : (idx == m.enc({1, 0, 0, 1}) ? 1 : idx));
}

std::uint32_t matrix_index(const FiniteRing& m2, const std::array<std::uint32_t, 4>& e) {
  const auto& m = as_matrix(m2);
  std::uint32_t raw = m.enc(e);
  std::uint32_t one_raw = m.enc({1, 0, 0, 1});
  if (raw == 1) return one_raw;
  if (raw == one_raw) return 1;
  return raw;
}

std::uint32_t series_truncation_order(const FiniteRing& s) {
  return as_series(s).truncation_order();
}

std::vector<std::uint32_t> series_coefficients(const FiniteRing& s, std::uint32_t idx) {
  const auto& sr = as_series(s);
  // raw(1) == 1 for series rings, so canonical == raw.
  return sr.decode(idx);
}

std::uint32_t series_index(const FiniteRing& s, const std::vector<std::uint32_t>& coeffs) {
  return as_series(s).encode(coeffs);
}

// --- predicates and solvers -----------------------------------------------------

std::string to_string(TwoPFVerdict v) {
  switch (v) {
    case TwoPFVerdict::AssumedYesLocal:
      return "assumed-yes-local";
    case TwoPFVerdict::NoNontrivialIdempotent:
      return "no-nontrivial-idempotent";
    default:
      return "unknown";
  }
}

TwoPFVerdict is_2pf_surrogate(const FiniteRing& r) {
  if (r.is_local()) return TwoPFVerdict::AssumedYesLocal;
  if (!r.has_only_trivial_idempotents()) return TwoPFVerdict::NoNontrivialIdempotent;
  return TwoPFVerdict::Unknown;
}

Elem CommutatorMaps::apply(Elem x) const {
  require_same_ring(alpha, beta);
  require_same_ring(alpha, x);
  if (direction == CommutatorDirection::LeftAlpha) return alpha * x - x * beta;
  return beta * x - x * alpha;
}

std::optional<Elem> solve_commutator(const CommutatorMaps& maps, Elem r) {
  const FiniteRing* ring = r.ring;
  require_same_ring(maps.alpha, r);
  for (std::uint32_t x = 0; x < ring->order(); ++x) {
    Elem cand = ring->elem(x);
    if (maps.apply(cand) == r) return cand;
  }
  return std::nullopt;
}

Elem solve_commutator_nilpotent(Elem alpha, Elem beta, Elem r, CommutatorDirection direction) {
  const FiniteRing* ring = r.ring;
  require_same_ring(alpha, beta);
  require_same_ring(alpha, r);
  auto n = ring->nilpotency_index(beta.idx);
  if (!n) throw RingError("beta is not nilpotent in " + ring->spec());
  auto ainv_idx = ring->inverse(alpha.idx);
  if (!ainv_idx) throw RingError("alpha is not a unit in " + ring->spec());
  Elem ainv = ring->elem(*ainv_idx);
  Elem x = ring->zero();
  if (direction == CommutatorDirection::LeftAlpha) {
    // x = sum_{i=1..n} alpha^{-i} r beta^{i-1}
    Elem apow = ainv, bpow = ring->one();
    for (std::uint32_t i = 1; i <= *n; ++i) {
      x = x + apow * r * bpow;
      apow = apow * ainv;
      bpow = bpow * beta;
    }
    if (!(alpha * x - x * beta == r))
      throw RingError("telescoping solution failed substitution check");
  } else {
    // x = -sum_{i=0..n-1} beta^i r alpha^{-(i+1)}, solving beta*x - x*alpha = r.
    Elem bpow = ring->one(), apow = ainv;
    for (std::uint32_t i = 0; i < *n; ++i) {
      x = x + bpow * r * apow;
      bpow = bpow * beta;
      apow = apow * ainv;
    }
    x = -x;
    if (!(beta * x - x * alpha == r))
      throw RingError("telescoping solution failed substitution check");
  }
  return x;
}

std::optional<std::pair<Elem, Elem>> element_strongly_jclean(Elem a) {
  const FiniteRing* r = a.ring;
  const auto& jmask = r->radical_mask();
  for (std::uint32_t e : r->idempotents()) {
    Elem ee = r->elem(e);
    Elem w = a - ee;
    if (jmask[w.idx] && ee * a == a * ee) return std::make_pair(ee, w);
  }
  return std::nullopt;
}

bool ring_is_strongly_jclean(const FiniteRing& r) {
  for (std::uint32_t a = 0; a < r.order(); ++a)
    if (!element_strongly_jclean(r.elem(a))) return false;
  return true;
}

bool ring_is_uniquely_clean(const FiniteRing& r) {
  const auto& jmask = r.radical_mask();
  for (std::uint32_t a = 0; a < r.order(); ++a) {
    int count = 0;
    for (std::uint32_t e : r.idempotents())
      if (jmask[r.sub(a, e)]) ++count;
    if (count != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> peirce_subgroup(const FiniteRing& r, std::uint32_t e) {
  if (r.order() > default_bound())
    throw BoundExceeded("Peirce subgroup sweep exceeds the bound for " + r.spec());
  std::uint32_t f = r.sub(1, e);
  std::vector<bool> left(r.order(), false), right(r.order(), false);
  std::vector<std::uint32_t> ls, rs;
  for (std::uint32_t x = 0; x < r.order(); ++x) {
    std::uint32_t l = r.mul(r.mul(e, x), f);
    std::uint32_t rt = r.mul(r.mul(f, x), e);
    if (!left[l]) {
      left[l] = true;
      ls.push_back(l);
    }
    if (!right[rt]) {
      right[rt] = true;
      rs.push_back(rt);
    }
  }
  std::vector<bool> seen(r.order(), false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t l : ls)
    for (std::uint32_t rt : rs) {
      std::uint32_t s = r.add(l, rt);
      if (!seen[s]) {
        seen[s] = true;
        out.push_back(s);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<OptimalWitness> element_optimally_jclean(Elem a) {
  const FiniteRing* r = a.ring;
  const auto& jmask = r->radical_mask();
  for (std::uint32_t e : r->idempotents()) {
    Elem ee = r->elem(e);
    if (!jmask[(a - ee).idx] || !(a * ee == ee * a)) continue;
    auto peirce = peirce_subgroup(*r, e);
    OptimalWitness w{ee, {}};
    w.c_for_b.resize(r->order(), UINT32_MAX);
    bool ok = true;
    for (std::uint32_t b = 0; b < r->order() && ok; ++b) {
      // [a, c] + [e, b] = 0 with c in the Peirce subgroup (Lemma-4.1 form).
      Elem eb = ee * r->elem(b) - r->elem(b) * ee;
      ok = false;
      for (std::uint32_t c : peirce) {
        Elem cc = r->elem(c);
        if ((a * cc - cc * a) + eb == r->zero()) {
          w.c_for_b[b] = c;
          ok = true;
          break;
        }
      }
    }
    if (ok) return w;
  }
  return std::nullopt;
}

// --- ring-spec mini-language -----------------------------------------------------

namespace {

RingPtr parse_spec_term(std::string_view s);

RingPtr parse_spec_expr(std::string_view s) {
  s = trim(s);
  // Top-level " x " products, left-associative.
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (depth == 0 && c == 'x') {
      bool left_ok = i == 0 || s[i - 1] == ' ' || s[i - 1] == ')' ;
      bool right_ok = i + 1 == s.size() || s[i + 1] == ' ' || s[i + 1] == '(';
      if (left_ok && right_ok) {
        parts.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
  }
  parts.push_back(s.substr(start));
  RingPtr r = parse_spec_term(trim(parts[0]));
  for (std::size_t i = 1; i < parts.size(); ++i)
    r = make_product(r, parse_spec_term(trim(parts[i])));
  return r;
}

std::uint64_t parse_uint(std::string_view s) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("expected a number, got '" + std::string(s) + "'");
  return std::strtoull(std::string(s).c_str(), nullptr, 10);
}

// "<inner>" from "name(<inner>)".
std::string_view strip_call(std::string_view s, std::string_view name) {
  std::string_view inner = s.substr(name.size());
  inner = trim(inner);
  if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
    throw ParseError("malformed '" + std::string(name) + "(...)' in ring spec");
  return trim(inner.substr(1, inner.size() - 2));
}

RingPtr parse_gf(std::string_view s) {
  std::string_view inner = strip_call(s, "GF");
  std::uint64_t p, k = 1;
  auto caret = inner.find('^');
  if (caret != std::string_view::npos) {
    p = parse_uint(inner.substr(0, caret));
    k = parse_uint(inner.substr(caret + 1));
  } else {
    std::uint64_t q = parse_uint(inner);
    // Factor q as p^k.
    p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
    std::uint64_t t = q;
    k = 0;
    while (t > 1) {
      if (t % p != 0) throw ParseError("GF order must be a prime power: " + std::string(inner));
      t /= p;
      ++k;
    }
    if (k == 0) throw ParseError("GF order must be a prime power: " + std::string(inner));
  }
  return make_galois_field(p, static_cast<std::uint32_t>(k));
}

RingPtr parse_spec_term(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw ParseError("empty ring spec");
  if (s.front() == '(' && s.back() == ')') {
    // Parenthesized group, unless the parens belong to a head like GF(...).
    int depth = 0;
    bool whole = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      else if (s[i] == ')') {
        --depth;
        if (depth == 0 && i + 1 != s.size()) whole = false;
      }
    }
    if (whole && s.front() == '(') return parse_spec_expr(s.substr(1, s.size() - 2));
  }
  if (s.starts_with("T2")) return make_upper_triangular(parse_spec_expr(strip_call(s, "T2")));
  if (s.starts_with("M2")) return make_matrix_ring(parse_spec_expr(strip_call(s, "M2")));
  if (s.starts_with("op")) return opposite_ring(parse_spec_expr(strip_call(s, "op")));
  if (s.starts_with("skew")) return make_skew_trivial(parse_spec_expr(strip_call(s, "skew")));
  if (s.starts_with("series")) {
    std::string_view inner = strip_call(s, "series");
    auto parts = split_top_level(inner, ',');
    if (parts.size() != 2) throw ParseError("series(<spec>, N) takes two arguments");
    return make_series_ring(parse_spec_expr(trim(parts[0])),
                            static_cast<std::uint32_t>(parse_uint(parts[1])));
  }
  // Z/n, optionally followed by [t]/(poly); same for GF(q).
  RingPtr base;
  std::string_view rest;
  auto bracket = s.find("[t]");
  if (s.starts_with("Z/")) {
    std::string_view head = bracket == std::string_view::npos ? s : s.substr(0, bracket);
    base = make_zmod(parse_uint(head.substr(2)));
    rest = bracket == std::string_view::npos ? std::string_view{} : s.substr(bracket);
  } else if (s.starts_with("GF")) {
    std::string_view head = bracket == std::string_view::npos ? s : s.substr(0, bracket);
    base = parse_gf(trim(head));
    rest = bracket == std::string_view::npos ? std::string_view{} : s.substr(bracket);
  } else {
    throw ParseError("unrecognized ring spec: '" + std::string(s) + "'");
  }
  if (rest.empty()) return base;
  // rest = "[t]/(poly)"
  rest = trim(rest.substr(3));
  if (rest.size() < 3 || rest.front() != '/' )
    throw ParseError("malformed quotient in ring spec: '" + std::string(s) + "'");
  rest = trim(rest.substr(1));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
    throw ParseError("malformed quotient modulus in ring spec: '" + std::string(s) + "'");
  auto poly = poly_parse(*base, rest.substr(1, rest.size() - 2), "t");
  if (!poly) throw ParseError("cannot parse modulus polynomial in '" + std::string(s) + "'");
  return make_poly_quotient(base, *poly);
}

}  // namespace

RingPtr construct_ring(std::string_view spec) { return parse_spec_expr(spec); }

}  // namespace strongj
