#include "cost.hpp"

#include "error.hpp"

namespace anarchy {

const Rat& CostValue::value() const {
  if (!finite_) throw InputError("cost value is unbounded");
  return value_;
}

CostValue CostValue::operator+(const CostValue& other) const {
  if (!finite_ || !other.finite_) return unbounded();
  return CostValue(value_ + other.value_);
}

bool CostValue::operator==(const CostValue& other) const {
  if (finite_ != other.finite_) return false;
  return !finite_ || value_ == other.value_;
}

std::strong_ordering CostValue::operator<=>(const CostValue& other) const {
  if (finite_ && other.finite_) {
    if (value_ < other.value_) return std::strong_ordering::less;
    if (value_ > other.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  if (finite_) return std::strong_ordering::less;     // finite < unbounded
  if (other.finite_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

CostValue CostValue::scaled(const Rat& factor) const {
  if (factor <= 0) throw InputError("scale factor must be positive");
  if (!finite_) return unbounded();
  return CostValue(value_ * factor);
}

std::string CostValue::str() const {
  return finite_ ? format_rational(value_) : "inf";
}

CostValue CostValue::parse(const std::string& text) {
  if (text == "inf") return unbounded();
  Rat value = parse_rational(text);
  if (value < 0) throw InputError("cost values must be non-negative, got \"" + text + "\"");
  return CostValue(std::move(value));
}

std::optional<TableDefect> validate_table(const std::vector<CostValue>& values) {
  if (values.size() < 2) return TableDefect{0, "table needs at least entries for loads 0 and 1"};
  if (!(values[0] == CostValue(0))) return TableDefect{0, "c(0) must be 0"};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!values[i].is_unbounded() && values[i].value() < 0)
      return TableDefect{i, "negative cost"};
    if (values[i] < values[i - 1])
      return TableDefect{i, "not non-decreasing (" + values[i].str() + " < " + values[i - 1].str() + ")"};
  }
  return std::nullopt;
}

CostTable::CostTable(std::vector<CostValue> values) : values_(std::move(values)) {
  if (auto defect = validate_table(values_))
    throw InputError("invalid cost table at index " + std::to_string(defect->index) + ": " + defect->reason);
}

const CostValue& CostTable::eval(long load) const {
  if (load < 0 || load > l_max())
    throw InputError("load " + std::to_string(load) + " outside table range 0.." + std::to_string(l_max()));
  return values_[static_cast<std::size_t>(load)];
}

CostTable CostTable::scaled(const Rat& factor) const {
  std::vector<CostValue> scaled;
  scaled.reserve(values_.size());
  for (const auto& v : values_) scaled.push_back(v.scaled(factor));
  return CostTable(std::move(scaled));
}

}  // namespace anarchy
