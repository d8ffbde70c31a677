#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "cotwist/ff.hpp"
#include "cotwist/poly.hpp"

namespace cotwist::ff {

std::uint64_t FieldSpec::size() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  return q;
}

Field::Field(std::uint64_t p, std::uint32_t k, std::vector<std::uint64_t> modulus)
    : p_(p), k_(k), spec_{p, k, std::move(modulus)} {
  if (k == 0) throw Error(ErrorCode::InvalidInput, "field degree must be positive");
  const auto q = nt::bounded_pow(p, k, kArithmeticFieldLimit);
  if (!q) throw Error(ErrorCode::FieldTooLarge, "p^k exceeds the arithmetic limit");
  if (p >= (std::uint64_t{1} << 32)) throw Error(ErrorCode::FieldTooLarge, "p too large");
  q_ = *q;
  ppow_.resize(k + 1);
  ppow_[0] = 1;
  for (std::uint32_t i = 1; i <= k; ++i) ppow_[i] = ppow_[i - 1] * p;

  trace_basis_.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    Elem y = ppow_[i], acc = 0;  // x^i has index p^i
    for (std::uint32_t j = 0; j < k; ++j) {
      acc = add(acc, y);
      y = pow_slow(y, p);
    }
    trace_basis_[i] = acc;  // lies in F_p, so the index is < p
  }
  unit_primes_ = nt::prime_factors(q_ - 1);
  if (q_ <= kTableFieldLimit) build_tables();
}

std::string Field::name() const { return "F" + std::to_string(q_); }

Elem Field::from_int(std::int64_t c) const { return nt::mod(c, p_); }

Elem Field::from_coeffs(const std::vector<std::uint64_t>& c) const {
  if (c.size() > k_) throw Error(ErrorCode::InvalidInput, "too many coefficients");
  Elem r = 0;
  for (std::size_t i = 0; i < c.size(); ++i) r += (c[i] % p_) * ppow_[i];
  return r;
}

std::vector<std::uint64_t> Field::coeffs(Elem a) const {
  std::vector<std::uint64_t> c(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::add_digits(Elem a, Elem b) const {
  Elem r = 0;
  for (std::uint32_t i = 0; (a | b) != 0; ++i) {
    std::uint64_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * ppow_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (p_ == 2) return a;
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0;
  for (std::uint32_t i = 0; a != 0; ++i) {
    const std::uint64_t d = a % p_;
    if (d) r += (p_ - d) * ppow_[i];
    a /= p_;
  }
  return r;
}

Elem Field::scale(std::uint64_t c, Elem a) const {
  c %= p_;
  if (c == 0 || a == 0) return 0;
  if (c == 1) return a;
  Elem r = 0;
  for (std::uint32_t i = 0; a != 0; ++i) {
    r += (a % p_) * c % p_ * ppow_[i];
    a /= p_;
  }
  return r;
}

Elem Field::mul_slow(Elem a, Elem b) const {
  if (k_ == 1) return a * b % p_;
  std::uint64_t da[64], db[64], prod[128] = {};
  for (std::uint32_t i = 0; i < k_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (!da[i]) continue;
    for (std::uint32_t j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
  }
  const auto& m = spec_.modulus;
  for (std::uint32_t i = 2 * k_ - 2; i >= k_; --i) {
    const std::uint64_t t = prod[i];
    if (!t) continue;
    const std::uint64_t nt = p_ - t;
    for (std::uint32_t j = 0; j < k_; ++j) {
      prod[i - k_ + j] = (prod[i - k_ + j] + nt * m[j]) % p_;
    }
  }
  Elem r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) r += prod[i] * ppow_[i];
  return r;
}

Elem Field::pow_slow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul_slow(r, a);
    a = mul_slow(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!log_.empty()) return exp_[log_[a] * (e % (q_ - 1)) % (q_ - 1)];
  const std::uint64_t r = e % (q_ - 1);
  return r == 0 ? 1 : pow_slow(a, r);
}

Elem Field::pow_signed(Elem a, std::int64_t e) const {
  if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
  return pow(inv(a), static_cast<std::uint64_t>(-(e + 1)) + 1);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::ZeroElement, "inverse of zero");
  if (!log_.empty()) return log_[a] == 0 ? 1 : exp_[q_ - 1 - log_[a]];
  return pow_slow(a, q_ - 2);
}

Elem Field::frobenius(Elem a, std::uint32_t times) const {
  times %= k_;
  for (std::uint32_t i = 0; i < times; ++i) a = pow(a, p_);
  return a;
}

void Field::build_tables() {
  const Elem g = generator();
  const std::uint64_t n = q_ - 1;
  log_.assign(q_, 0);
  exp_.assign(2 * n, 0);
  // Multiplication by g is F_p-linear; walk the powers through the images of
  // the basis x^i.
  std::vector<Elem> gx(k_);
  std::vector<std::vector<std::uint64_t>> gxd(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    gx[i] = mul_slow(g, ppow_[i]);
    gxd[i] = coeffs(gx[i]);
  }
  std::vector<std::uint64_t> cur(k_, 0), next(k_);
  cur[0] = 1;
  Elem cur_idx = 1;
  for (std::uint64_t e = 0; e < n; ++e) {
    exp_[e] = exp_[e + n] = cur_idx;
    log_[cur_idx] = static_cast<std::uint32_t>(e);
    if (p_ == 2) {
      Elem nx = 0;
      for (std::uint32_t i = 0; i < k_; ++i) {
        if (cur_idx >> i & 1) nx ^= gx[i];
      }
      cur_idx = nx;
      continue;
    }
    std::fill(next.begin(), next.end(), 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
      if (!cur[i]) continue;
      for (std::uint32_t j = 0; j < k_; ++j) next[j] += cur[i] * gxd[i][j];
    }
    cur_idx = 0;
    for (std::uint32_t j = 0; j < k_; ++j) {
      cur[j] = next[j] % p_;
      cur_idx += cur[j] * ppow_[j];
    }
  }
  if (cur_idx != 1) throw Error(ErrorCode::InvalidInput, "modulus is not irreducible");
}

bool Field::is_square(Elem a) const {
  if (a == 0 || p_ == 2) return true;
  if (!log_.empty()) return log_[a] % 2 == 0;
  return pow(a, (q_ - 1) / 2) == 1;
}

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  if (p_ == 2) return pow(a, q_ / 2);
  if (!is_square(a)) return std::nullopt;
  Elem r;
  if (!log_.empty()) {
    r = exp_[log_[a] / 2];
  } else {
    // Tonelli-Shanks with the generator as nonresidue.
    std::uint64_t t = q_ - 1;
    std::uint32_t s = 0;
    while (t % 2 == 0) {
      t /= 2;
      ++s;
    }
    std::uint32_t m = s;
    Elem c = pow(generator(), t), tt = pow(a, t);
    r = pow(a, (t + 1) / 2);
    while (tt != 1) {
      std::uint32_t i = 0;
      for (Elem z = tt; z != 1; z = mul(z, z)) ++i;
      Elem b = c;
      for (std::uint32_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      tt = mul(tt, c);
      r = mul(r, b);
    }
  }
  return std::min(r, neg(r));
}

std::uint64_t Field::absolute_trace(Elem a) const {
  std::uint64_t acc = 0;
  for (std::uint32_t i = 0; i < k_ && a != 0; ++i) {
    acc = (acc + (a % p_) * trace_basis_[i]) % p_;
    a /= p_;
  }
  return acc;
}

Elem Field::generator() const {
  std::call_once(gen_once_, [this] {
    if (q_ == 2) {
      generator_ = 1;
      return;
    }
    for (Elem g = 2; g < q_; ++g) {
      bool ok = true;
      for (std::uint64_t l : unit_primes_) {
        if (pow_slow(g, (q_ - 1) / l) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        generator_ = g;
        return;
      }
    }
    throw Error(ErrorCode::InvalidInput, "no generator: modulus is not irreducible");
  });
  return generator_;
}

std::uint64_t Field::order_of(Elem a) const {
  if (a == 0) throw Error(ErrorCode::ZeroElement, "order of zero");
  std::uint64_t n = q_ - 1;
  for (std::uint64_t l : unit_primes_) {
    while (n % l == 0 && pow(a, n / l) == 1) n /= l;
  }
  return n;
}

const std::vector<std::uint64_t>& Field::unit_primes() const { return unit_primes_; }

namespace {

std::mutex g_cache_mutex;
std::map<std::pair<std::uint64_t, std::uint32_t>, FieldPtr>& field_cache() {
  static std::map<std::pair<std::uint64_t, std::uint32_t>, FieldPtr> cache;
  return cache;
}

std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  const FieldPtr fp = build_field(p, 1, kArithmeticFieldLimit);
  const std::uint64_t n = *nt::bounded_pow(p, k, kArithmeticFieldLimit);
  for (std::uint64_t idx = 1; idx < n; ++idx) {
    if (idx % p == 0) continue;  // divisible by x
    std::vector<Elem> c(k + 1);
    std::uint64_t v = idx;
    for (std::uint32_t i = 0; i < k; ++i) {
      c[i] = v % p;
      v /= p;
    }
    c[k] = 1;
    if (is_irreducible(Poly(fp, c))) return {c.begin(), c.end()};
  }
  throw Error(ErrorCode::InvalidInput, "no irreducible polynomial found");
}

}  // namespace

FieldPtr build_field(std::uint64_t p, std::uint32_t k, std::uint64_t bound) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k == 0) throw Error(ErrorCode::InvalidInput, "field degree must be positive");
  if (!nt::bounded_pow(p, k, std::min(bound, kArithmeticFieldLimit))) {
    throw Error(ErrorCode::DegreeTooLarge,
                std::to_string(p) + "^" + std::to_string(k) + " exceeds the field bound");
  }
  const auto key = std::make_pair(p, k);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = field_cache().find(key);
    if (it != field_cache().end()) return it->second;
  }
  auto field = std::make_shared<const Field>(p, k, smallest_irreducible(p, k));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = field_cache().emplace(key, field);
  return it->second;
}

FieldPtr field_from_spec(const FieldSpec& spec, std::uint64_t bound) {
  if (!nt::is_prime(spec.p)) throw Error(ErrorCode::NotPrime, "field spec p is not prime");
  if (spec.k == 0 || spec.modulus.size() != spec.k + 1 || spec.modulus.back() != 1) {
    throw Error(ErrorCode::InvalidInput, "modulus must be monic of degree k");
  }
  for (auto c : spec.modulus) {
    if (c >= spec.p) throw Error(ErrorCode::InvalidInput, "modulus coefficient out of range");
  }
  FieldPtr canonical = build_field(spec.p, spec.k, bound);
  if (canonical->spec() == spec) return canonical;
  if (spec.k == 1) throw Error(ErrorCode::InvalidInput, "prime field modulus must be x");
  const FieldPtr fp = build_field(spec.p, 1, bound);
  if (!is_irreducible(Poly(fp, {spec.modulus.begin(), spec.modulus.end()}))) {
    throw Error(ErrorCode::InvalidInput, "modulus is not irreducible");
  }
  return std::make_shared<const Field>(spec.p, spec.k, spec.modulus);
}

}  // namespace cotwist::ff
