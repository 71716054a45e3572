#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace demachar {

/// Multiplicities, grades and pairings are exact 64-bit integers with
/// overflow-checked arithmetic; anything that can genuinely exceed 64 bits
/// (Weyl dimension products) goes through arbitrary precision internally.
using Int = long long;
using Coords = std::vector<Int>;

/// Invalid input: wrong rank, non-dominant weight, non-interlacing pair, ...
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation exceeded its term-count budget or an engine capacity limit.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural guarantee failed; indicates a bug, never bad user input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw BudgetError("integer overflow in exact arithmetic");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw BudgetError("integer overflow in exact arithmetic");
  return r;
}

/// Default cap on sparse character sizes (number of stored terms).
inline constexpr std::size_t kDefaultTermBudget = 5'000'000;

}  // namespace demachar
