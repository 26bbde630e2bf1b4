#include "symframes/matrix.hpp"

#include <map>

namespace symframes {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), ids_(rows * cols, 0) {
  intern(Cyclotomic());
}

std::uint32_t ExactMatrix::intern(const Cyclotomic& v) {
  auto it = index_.find(v);
  if (it != index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(pool_.size());
  pool_.push_back(v);
  index_.emplace(v, id);
  return id;
}

bool ExactMatrix::is_hermitian() const {
  if (rows_ != cols_) return false;
  std::vector<std::uint32_t> conj_id(pool_.size());
  std::vector<char> known(pool_.size(), 0);
  auto conj_of = [&](std::uint32_t a) -> std::int64_t {
    if (!known[a]) {
      known[a] = 1;
      auto it = index_.find(pool_[a].conj());
      conj_id[a] = it == index_.end() ? 0xffffffffu : it->second;
    }
    return conj_id[a];
  };
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (conj_of(id(i, j)) != id(j, i)) return false;
  return true;
}

bool ExactMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (id(i, j) != id(j, i)) return false;
  return true;
}

}  // namespace symframes
