#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "subideal/error.hpp"
#include "subideal/polynomial.hpp"

namespace subideal {

/// s points in K^n, row per point, with variable labels.
template <class K>
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::vector<std::string> names, std::vector<std::vector<K>> rows)
      : names_(std::move(names)), rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.size() != names_.size()) throw ValidationError("ragged point row");
  }

  std::size_t size() const { return rows_.size(); }
  std::size_t nvars() const { return names_.size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<K>>& rows() const { return rows_; }
  const std::vector<K>& operator[](std::size_t i) const { return rows_[i]; }

  std::size_t distinct_count() const {
    std::set<std::vector<K>> seen(rows_.begin(), rows_.end());
    return seen.size();
  }

  bool in_unit_cube() const {
    for (const auto& r : rows_)
      for (const auto& v : r)
        if (std::fabs(ScalarTraits<K>::to_double(v)) > 1.0) return false;
    return true;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<K>> rows_;
};

/// eval(f) = (f(p_1), ..., f(p_s)).
template <class K>
std::vector<K> evaluate(const Polynomial<K>& f, const PointSet<K>& X) {
  if (f.nvars() != X.nvars())
    throw ValidationError("polynomial has " + std::to_string(f.nvars()) +
                          " indeterminates but points have " + std::to_string(X.nvars()));
  std::vector<K> out;
  out.reserve(X.size());
  for (const auto& p : X.rows()) out.push_back(f(std::span<const K>(p)));
  return out;
}

inline PointSet<double> to_float(const PointSet<Rational>& X) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : X.rows()) {
    std::vector<double> row;
    for (const auto& v : r) row.push_back(v.get_d());
    rows.push_back(std::move(row));
  }
  return PointSet<double>(X.names(), std::move(rows));
}

}  // namespace subideal
