#pragma once

// Closed-form scalar operation counts (mops = multiplications, sops = sums)
// for every partial-trace and Bloch-reconstruction method.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qtrace/errors.hpp"

namespace qtrace {

enum class Method {
  direct_b,
  semi_b,
  fast_b,
  fast_b_hermitian,
  inner_direct,
  inner_fast,
  inner_fast_hermitian,
  bloch_direct,
  bloch_semi,
  bloch_gellmann,
};

inline constexpr std::array<Method, 10> kAllMethods = {
    Method::direct_b,     Method::semi_b,           Method::fast_b,
    Method::fast_b_hermitian, Method::inner_direct, Method::inner_fast,
    Method::inner_fast_hermitian, Method::bloch_direct, Method::bloch_semi,
    Method::bloch_gellmann,
};

inline constexpr std::string_view method_name(Method m) {
  switch (m) {
    case Method::direct_b: return "direct_b";
    case Method::semi_b: return "semi_b";
    case Method::fast_b: return "fast_b";
    case Method::fast_b_hermitian: return "fast_b_hermitian";
    case Method::inner_direct: return "inner_direct";
    case Method::inner_fast: return "inner_fast";
    case Method::inner_fast_hermitian: return "inner_fast_hermitian";
    case Method::bloch_direct: return "bloch_direct";
    case Method::bloch_semi: return "bloch_semi";
    case Method::bloch_gellmann: return "bloch_gellmann";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (auto m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

inline constexpr bool is_inner(Method m) {
  return m == Method::inner_direct || m == Method::inner_fast || m == Method::inner_fast_hermitian;
}

struct CostEstimate {
  std::uint64_t mops = 0;
  std::uint64_t sops = 0;
  friend bool operator==(const CostEstimate&, const CostEstimate&) = default;
};

namespace detail {

/// Overflow-checked unsigned arithmetic for the cost formulas.
class Exact {
public:
  constexpr Exact(std::uint64_t v = 0) : v_(v) {}  // NOLINT(google-explicit-constructor)
  constexpr std::uint64_t value() const { return v_; }

  friend Exact operator+(Exact a, Exact b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw std::overflow_error("cost_estimate: overflow");
    return r;
  }
  friend Exact operator-(Exact a, Exact b) {
    if (b.v_ > a.v_) throw std::logic_error("cost_estimate: negative count");
    return a.v_ - b.v_;
  }
  friend Exact operator*(Exact a, Exact b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw std::overflow_error("cost_estimate: overflow");
    return r;
  }
  /// Exact division by 2 of an even quantity.
  Exact half() const {
    if (v_ % 2 != 0) throw std::logic_error("cost_estimate: odd value halved");
    return v_ / 2;
  }

private:
  std::uint64_t v_;
};

}  // namespace detail

/// Predicted (mops, sops). `dc` is required for, and only for, the inner
/// (tripartite) methods.
inline CostEstimate cost_estimate(Method method, std::uint64_t da_, std::uint64_t db_,
                                  std::optional<std::uint64_t> dc_ = std::nullopt) {
  if (da_ == 0 || db_ == 0 || (dc_ && *dc_ == 0)) {
    throw DimensionError("cost_estimate: dimensions must be >= 1");
  }
  if (is_inner(method) != dc_.has_value()) {
    throw DimensionError(std::string("cost_estimate: ") + std::string(method_name(method)) +
                         (is_inner(method) ? " requires dc" : " does not take dc"));
  }
  using detail::Exact;
  const Exact da = da_, db = db_, dc = dc_.value_or(1);
  const Exact one = 1, two = 2;
  switch (method) {
    case Method::direct_b:
      return {(da * da * db * db * (two + da * (db + one))).value(),
              (da * da * db * (da * db - one) * (db + one)).value()};
    case Method::semi_b:
      return {(da * da * db * db * (db + one)).value(), (da * da * db * (db * db - one)).value()};
    case Method::fast_b:
      return {0, (da * da * (db - one)).value()};
    case Method::fast_b_hermitian:
      return {0, (da * da * (db - one) - (da * (da - one)).half() * (db - one)).value()};
    case Method::inner_direct:
      return {(da * da * db * db * dc * dc * (da * dc * (db + one) + two)).value(),
              (da * da * db * dc * dc * (db + one) * (da * db * dc - one)).value()};
    case Method::inner_fast:
      return {0, (da * da * dc * dc * (db - one)).value()};
    case Method::inner_fast_hermitian:
      return {0, (da * da * dc * dc * (db - one) - (da * dc * (da * dc - one)).half() * (db - one)).value()};
    case Method::bloch_direct:
      return {(db * db * (db * db + da * da * (db * db - one) * (da * db + one))).value(),
              ((db * db - one) * (da * da * db * db + one) * (da * db - one) + db * db * (db * db) +
               db - two * db * db)
                  .value()};
    case Method::bloch_semi:
      return {(two * db * db * (db * db - one)).value(),
              (db * db * ((db * db - one) * da) + db - db * db).value()};
    case Method::bloch_gellmann:
      return {(Exact(12) * (db - one) + one).value(),
              (db * db * (da - one) + Exact(5) * (db - one) + one).value()};
  }
  throw std::logic_error("cost_estimate: unknown method");
}

struct Exponents {
  int p;  // power of da
  int q;  // power of db
  friend bool operator==(const Exponents&, const Exponents&) = default;
};

/// Leading exponents (p, q) of the dominant count ~ da^p db^q for da, db >> 1.
/// For the inner methods dc carries the same power as da.
inline constexpr Exponents asymptotic_exponents(Method m) {
  switch (m) {
    case Method::direct_b: return {3, 3};
    case Method::semi_b: return {2, 3};
    case Method::fast_b: return {2, 1};
    case Method::fast_b_hermitian: return {2, 1};
    case Method::inner_direct: return {3, 3};
    case Method::inner_fast: return {2, 1};
    case Method::inner_fast_hermitian: return {2, 1};
    case Method::bloch_direct: return {3, 5};
    case Method::bloch_semi: return {1, 4};
    case Method::bloch_gellmann: return {1, 2};
  }
  return {0, 0};
}

struct CostStep {
  std::string_view operation;
  CostEstimate cost;
};

/// Per-basis-vector breakdown of the direct method (multiply by db for the
/// total): the two Kronecker factors and the two dense products.
inline std::array<CostStep, 4> cost_direct_steps(std::uint64_t da_, std::uint64_t db_) {
  if (da_ == 0 || db_ == 0) throw DimensionError("cost_direct_steps: dimensions must be >= 1");
  using detail::Exact;
  const Exact da = da_, db = db_, one = 1;
  return {{
      {"I_a (x) <b_j|", {(da * da * db).value(), 0}},
      {"I_a (x) |b_j>", {(da * da * db).value(), 0}},
      {"(I_a (x) <b_j|) O", {(da * da * da * db * db).value(), (da * da * db * (da * db - one)).value()}},
      {"(I_a (x) <b_j| O)(I_a (x) |b_j>)", {(da * da * da * db).value(), (da * da * (da * db - one)).value()}},
  }};
}

}  // namespace qtrace
