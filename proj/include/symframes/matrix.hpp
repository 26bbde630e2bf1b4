#pragma once

#include <unordered_map>
#include <vector>

#include "symframes/cyclotomic.hpp"

namespace symframes {

// Dense matrix whose entries are ids into a pool of distinct exact values.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t id(std::size_t i, std::size_t j) const { return ids_[i * cols_ + j]; }
  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return pool_[id(i, j)]; }
  void set(std::size_t i, std::size_t j, std::uint32_t id) { ids_[i * cols_ + j] = id; }
  void set(std::size_t i, std::size_t j, const Cyclotomic& v) { set(i, j, intern(v)); }

  std::uint32_t intern(const Cyclotomic& v);
  const std::vector<Cyclotomic>& pool() const { return pool_; }
  const Cyclotomic& value(std::uint32_t id) const { return pool_[id]; }

  bool is_hermitian() const;
  bool is_symmetric() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> ids_;
  std::vector<Cyclotomic> pool_;
  std::unordered_map<Cyclotomic, std::uint32_t, CyclotomicHash> index_;
};

}  // namespace symframes
