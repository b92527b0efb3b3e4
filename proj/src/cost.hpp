#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace anarchy {

// A cost amount: a non-negative rational, or "unbounded" for loads past an
// edge capacity. Unbounded compares above every finite value and equal to
// itself, so min/max and sorting behave the way capacitated games expect.
class CostValue {
 public:
  CostValue() : finite_(true), value_(0) {}
  CostValue(Rat value) : finite_(true), value_(std::move(value)) {}  // NOLINT: implicit on purpose
  CostValue(long value) : finite_(true), value_(value) {}            // NOLINT
  CostValue(int value) : finite_(true), value_(value) {}             // NOLINT

  static CostValue unbounded() {
    CostValue v;
    v.finite_ = false;
    return v;
  }

  bool is_unbounded() const { return !finite_; }
  // Finite numeric value. Throws InputError when unbounded.
  const Rat& value() const;

  CostValue operator+(const CostValue& other) const;
  CostValue& operator+=(const CostValue& other) { return *this = *this + other; }

  bool operator==(const CostValue& other) const;
  std::strong_ordering operator<=>(const CostValue& other) const;

  // Pointwise multiplication by a positive rational; unbounded stays unbounded.
  CostValue scaled(const Rat& factor) const;

  std::string str() const;  // "7/2" or "inf"
  static CostValue parse(const std::string& text);

 private:
  bool finite_;
  Rat value_;
};

// Where a candidate cost table first breaks the rules.
struct TableDefect {
  std::size_t index;
  std::string reason;
};

// First defect in a candidate table, if any. The rules: at least two entries,
// c(0) = 0, every finite entry non-negative, values non-decreasing.
std::optional<TableDefect> validate_table(const std::vector<CostValue>& values);

// Per-edge cost table c(0..l_max): the cost of the edge when a given number
// of players use it. Construction enforces the validate_table rules.
class CostTable {
 public:
  explicit CostTable(std::vector<CostValue> values);

  long l_max() const { return static_cast<long>(values_.size()) - 1; }
  // c(load). Throws InputError when load is outside 0..l_max.
  const CostValue& eval(long load) const;
  CostTable scaled(const Rat& factor) const;
  const std::vector<CostValue>& values() const { return values_; }

 private:
  std::vector<CostValue> values_;
};

}  // namespace anarchy
