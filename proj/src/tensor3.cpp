#include "apolarium/tensor3.hpp"

#include <algorithm>

#include "apolarium/errors.hpp"

namespace apolarium::tensor {

namespace {

std::array<int, 2> other_axes(int axis) {
  switch (axis) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    case 2: return {0, 1};
    default: throw DomainError("axis must be 0, 1 or 2");
  }
}

}  // namespace

void Tensor3::check(const Index3& ix) const {
  for (std::size_t a = 0; a < 3; ++a)
    if (ix[a] >= dims_[a])
      throw DomainError("tensor index " + std::to_string(ix[a]) + " out of range on axis " + std::to_string(a));
}

Rat Tensor3::get(const Index3& ix) const {
  check(ix);
  auto it = entries_.find(ix);
  return it == entries_.end() ? Rat(0) : it->second;
}

void Tensor3::set(const Index3& ix, const Rat& v) {
  check(ix);
  if (v == 0)
    entries_.erase(ix);
  else
    entries_[ix] = v;
}

void Tensor3::add(const Index3& ix, const Rat& v) {
  check(ix);
  if (v == 0) return;
  auto [it, inserted] = entries_.try_emplace(ix, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

void Tensor3::set_labels(Labels labels) {
  for (std::size_t a = 0; a < 3; ++a)
    if (labels[a].size() != dims_[a]) throw DomainError("label table size does not match dims on axis " + std::to_string(a));
  labels_ = std::move(labels);
}

QMatrix slice(const Tensor3& t, int axis, std::size_t index) {
  auto [r, c] = other_axes(axis);
  if (index >= t.dim(axis)) throw DomainError("slice index out of range");
  QMatrix m(t.dim(r), t.dim(c));
  for (const auto& [ix, v] : t.entries())
    if (ix[static_cast<std::size_t>(axis)] == index) m(ix[static_cast<std::size_t>(r)], ix[static_cast<std::size_t>(c)]) = v;
  return m;
}

std::size_t axis_rank(const Tensor3& t, int axis) {
  auto [r, c] = other_axes(axis);
  const std::size_t width = t.dim(r) * t.dim(c);
  std::vector<exact::SparseRow> rows(t.dim(axis));
  for (const auto& [ix, v] : t.entries())
    rows[ix[static_cast<std::size_t>(axis)]].emplace_back(
        ix[static_cast<std::size_t>(r)] * t.dim(c) + ix[static_cast<std::size_t>(c)], v);
  exact::IncrementalEchelon ech(width);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ech.insert(std::move(row));
  }
  return ech.rank();
}

bool is_concise(const Tensor3& t) {
  for (int a = 0; a < 3; ++a)
    if (axis_rank(t, a) != t.dim(a)) return false;
  return true;
}

Tensor3 cw(std::size_t n) {
  if (n < 3) throw DomainError("cw(n) needs n >= 3");
  Tensor3 t({n, n, n});
  for (std::size_t i = 0; i < n; ++i) t.set({0, i, i}, 1);
  for (std::size_t i = 1; i < n; ++i) t.set({i, 0, i}, 1);
  for (std::size_t i = 1; i + 1 < n; ++i) t.set({i, i, n - 1}, 1);
  return t;
}

std::size_t AbelianGroup::order() const {
  std::size_t o = 1;
  for (unsigned m : orders) {
    if (m == 0) throw DomainError("cyclic factor orders must be positive");
    o *= m;
  }
  return o;
}

std::vector<std::vector<unsigned>> AbelianGroup::elements() const {
  std::vector<std::vector<unsigned>> out;
  out.reserve(order());
  std::vector<unsigned> g(orders.size(), 0);
  for (std::size_t c = 0; c < order(); ++c) {
    out.push_back(g);
    for (std::size_t i = orders.size(); i-- > 0;) {
      if (++g[i] < orders[i]) break;
      g[i] = 0;
    }
  }
  return out;
}

std::size_t AbelianGroup::index_of(const std::vector<unsigned>& g) const {
  if (g.size() != orders.size()) throw DomainError("group element has the wrong length");
  std::size_t ix = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (g[i] >= orders[i]) throw DomainError("group element coordinate out of range");
    ix = ix * orders[i] + g[i];
  }
  return ix;
}

std::vector<unsigned> AbelianGroup::add(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
  std::vector<unsigned> out(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) out[i] = (a.at(i) + b.at(i)) % orders[i];
  return out;
}

Tensor3 group_tensor(const AbelianGroup& g) {
  const auto elems = g.elements();
  const std::size_t n = elems.size();
  Tensor3 t({n, n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.set({i, j, g.index_of(g.add(elems[i], elems[j]))}, 1);
  std::vector<std::string> names;
  for (const auto& e : elems) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    names.push_back("(" + s + ")");
  }
  t.set_labels({names, names, names});
  return t;
}

Tensor3 structure_tensor(const MultTable& table) {
  const std::size_t n = table.size();
  Tensor3 t({n, n, n});
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw DomainError("multiplication table is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j].size() != n) throw DomainError("product coordinates have the wrong length");
      for (std::size_t k = 0; k < n; ++k) t.set({i, j, k}, table[i][j][k]);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (table[i][j] != table[j][i])
        throw DomainError("multiplication table is not commutative at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  return t;
}

void PartiallySymmetricTensor::validate() const {
  for (std::size_t c = 0; c < slices.size(); ++c) {
    if (slices[c].rows() != n || slices[c].cols() != n)
      throw DomainError("slice " + std::to_string(c) + " is not " + std::to_string(n) + "x" + std::to_string(n));
    if (!slices[c].is_symmetric()) throw DomainError("slice " + std::to_string(c) + " is not symmetric");
  }
}

Tensor3 algebra_A_Tk(const PartiallySymmetricTensor& t, std::size_t k) {
  t.validate();
  const std::size_t n = t.n;
  const std::size_t m = t.m();
  const std::size_t dim = 1 + n + k + m;
  const std::size_t z0 = 1 + n + k;
  Tensor3 out({dim, dim, dim});
  for (std::size_t b = 0; b < dim; ++b) {
    out.set({0, b, b}, 1);
    out.set({b, 0, b}, 1);
  }
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) out.set({1 + a, 1 + b, z0 + c}, t.slices[c](a, b));
  std::vector<std::string> names{"1"};
  for (std::size_t a = 1; a <= n; ++a) names.push_back("x" + std::to_string(a));
  for (std::size_t a = 1; a <= k; ++a) names.push_back("y" + std::to_string(a));
  for (std::size_t a = 1; a <= m; ++a) names.push_back("z" + std::to_string(a));
  out.set_labels({names, names, names});
  return out;
}

PartiallySymmetricTensor symmetrize_TS(const Tensor3& t) {
  if (t.dim(0) != t.dim(1)) throw DomainError("T_S needs equal first two dimensions");
  const std::size_t n = t.dim(0);
  PartiallySymmetricTensor out;
  out.n = 2 * n;
  for (std::size_t j = 0; j < t.dim(2); ++j) {
    QMatrix s = slice(t, 2, j);
    QMatrix big(2 * n, 2 * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        big(a, n + b) = s(a, b);
        big(n + b, a) = s(a, b);
      }
    out.slices.push_back(std::move(big));
  }
  return out;
}

Tensor3 one_generic_extension(const Tensor3& t, std::size_t k) {
  for (int a = 0; a < 3; ++a)
    if (axis_rank(t, a) != t.dim(a)) throw DomainError("tensor is not concise on axis " + std::to_string(a));
  const std::size_t a = t.dim(0);
  const std::size_t b = t.dim(1);
  const std::size_t c = t.dim(2);
  if (k < c) throw DomainError("one-generic extension needs k >= c");
  const std::size_t w = b + k;
  Tensor3 out({a + 1, w, w});
  for (std::size_t p = 0; p < w; ++p) out.set({0, p, p}, 1);
  for (const auto& [ix, v] : t.entries()) out.set({ix[0] + 1, ix[1], b + (k - c) + ix[2]}, v);
  return out;
}

Tensor3 kronecker_product(const Tensor3& a, const Tensor3& b, const Limits& limits) {
  if (a.nnz() != 0 && b.nnz() > limits.max_entries / a.nnz())
    throw GuardError("Kronecker product exceeds the entry limit (" + std::to_string(limits.max_entries) + ")");
  Index3 dims;
  for (std::size_t x = 0; x < 3; ++x) dims[x] = a.dims()[x] * b.dims()[x];
  Tensor3 out(dims);
  for (const auto& [i, u] : a.entries())
    for (const auto& [j, v] : b.entries())
      out.set({i[0] * b.dims()[0] + j[0], i[1] * b.dims()[1] + j[1], i[2] * b.dims()[2] + j[2]}, u * v);
  if (a.labels() && b.labels()) {
    Tensor3::Labels labels;
    for (std::size_t x = 0; x < 3; ++x)
      for (const auto& s : (*a.labels())[x])
        for (const auto& r : (*b.labels())[x]) labels[x].push_back(s + "|" + r);
    out.set_labels(std::move(labels));
  }
  return out;
}

Tensor3 kronecker_power(const Tensor3& t, unsigned n, const Limits& limits) {
  if (n == 0) {
    Tensor3 one({1, 1, 1});
    one.set({0, 0, 0}, 1);
    return one;
  }
  Tensor3 out = t;
  for (unsigned i = 1; i < n; ++i) out = kronecker_product(out, t, limits);
  return out;
}

nlohmann::json to_json(const Tensor3& t) {
  nlohmann::json j;
  j["dims"] = {t.dims()[0], t.dims()[1], t.dims()[2]};
  auto entries = nlohmann::json::array();
  for (const auto& [ix, v] : t.entries()) entries.push_back({ix[0], ix[1], ix[2], exact::to_string(v)});
  j["entries"] = std::move(entries);
  if (t.labels()) j["labels"] = {(*t.labels())[0], (*t.labels())[1], (*t.labels())[2]};
  return j;
}

Tensor3 tensor_from_json(const nlohmann::json& j) {
  try {
    const auto& d = j.at("dims");
    if (!d.is_array() || d.size() != 3) throw ParseError("tensor 'dims' must have three entries");
    Tensor3 t({d[0].get<std::size_t>(), d[1].get<std::size_t>(), d[2].get<std::size_t>()});
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 4) throw ParseError("tensor entry must be [i,j,k,value]");
      Rat v = e[3].is_string() ? exact::parse_rat(e[3].get<std::string>()) : Rat(e[3].get<long>());
      Index3 ix{e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::size_t>()};
      if (t.get(ix) != 0) throw ParseError("duplicate tensor entry");
      t.set(ix, v);
    }
    if (j.contains("labels")) {
      const auto& l = j.at("labels");
      if (!l.is_array() || l.size() != 3) throw ParseError("tensor 'labels' must have three arrays");
      t.set_labels({l[0].get<std::vector<std::string>>(), l[1].get<std::vector<std::string>>(),
                    l[2].get<std::vector<std::string>>()});
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed tensor JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid tensor JSON: ") + e.what());
  }
}

}  // namespace apolarium::tensor
