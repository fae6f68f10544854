#include "apolarium/sweet.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <functional>
#include <set>

#include "apolarium/errors.hpp"

namespace apolarium::sweet {

namespace {

std::size_t checked_pow(std::size_t base, unsigned n, std::size_t cap, const char* what) {
  std::size_t out = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (base != 0 && out > cap / base) throw GuardError(std::string(what) + " exceeds the entry guard");
    out *= base;
  }
  return out;
}

std::string label_string(const Label& l) {
  if (l.size() == 1) return std::to_string(l[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(l[i]);
  }
  return s + ")";
}

// Per-axis label ids and the target count of each id at power N.
struct AxisPlan {
  bool restricted = false;
  std::vector<std::size_t> id_of_index;
  std::vector<long> target;
};

AxisPlan plan_axis(const Blocking& b, const Marginal* m, int axis, unsigned n) {
  AxisPlan plan;
  const auto& labels = b.labels[static_cast<std::size_t>(axis)];
  std::map<Label, std::size_t> ids;
  for (const auto& l : labels) ids.emplace(l, ids.size());
  plan.id_of_index.reserve(labels.size());
  for (const auto& l : labels) plan.id_of_index.push_back(ids.at(l));
  if (!m) return plan;
  plan.restricted = true;
  plan.target.assign(ids.size(), 0);
  long total = 0;
  for (const auto& [label, prob] : *m) {
    Rat count = prob * n;
    if (count.get_den() != 1) {
      throw DomainError("N times the marginal of label " + label_string(label) + " on axis " +
                        std::to_string(axis) + " is not an integer");
    }
    auto it = ids.find(label);
    long c = count.get_num().get_si();
    total += c;
    if (it != ids.end()) plan.target[it->second] = c;
  }
  // Labels of the marginal missing from the blocking leave nothing to keep.
  if (total != static_cast<long>(n)) plan.target.assign(ids.size(), -1);
  return plan;
}

void check_distribution_integral(const BlockDistribution& p, unsigned n) {
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    if (Rat(p.probs[i] * n).get_den() != 1) {
      throw DomainError("N * P(b) is not an integer for block " + std::to_string(i));
    }
  }
}

// Walks all sequences of nonzero entries of `t` of length n whose restricted
// axes match their targets and emits (flat indices, product value).
void walk_entries(const Tensor3& t, const std::array<AxisPlan, 3>& plans, unsigned n, const Limits& limits,
                  const std::function<void(const std::array<std::size_t, 3>&, const Rat&)>& emit) {
  std::vector<std::pair<Index3, Rat>> entries(t.entries().begin(), t.entries().end());
  std::array<std::vector<long>, 3> counts;
  for (std::size_t a = 0; a < 3; ++a) {
    if (plans[a].restricted) counts[a].assign(plans[a].target.size(), 0);
  }
  std::array<std::size_t, 3> flat{0, 0, 0};
  std::size_t leaves = 0;
  std::function<void(unsigned, const Rat&)> rec = [&](unsigned pos, const Rat& value) {
    if (pos == n) {
      if (++leaves > limits.max_entries) throw GuardError("projection exceeds the entry guard");
      emit(flat, value);
      return;
    }
    for (const auto& [ix, v] : entries) {
      bool ok = true;
      std::size_t touched = 0;
      for (; touched < 3; ++touched) {
        const auto& plan = plans[touched];
        if (!plan.restricted) continue;
        auto id = plan.id_of_index[ix[touched]];
        if (++counts[touched][id] > plan.target[id]) {
          ++touched;
          ok = false;
          break;
        }
      }
      if (ok) {
        auto saved = flat;
        for (std::size_t a = 0; a < 3; ++a) flat[a] = flat[a] * t.dim(static_cast<int>(a)) + ix[a];
        rec(pos + 1, value * v);
        flat = saved;
      }
      for (std::size_t a = 0; a < touched; ++a) {
        if (plans[a].restricted) --counts[a][plans[a].id_of_index[ix[a]]];
      }
    }
  };
  rec(0, Rat(1));
}

std::vector<std::size_t> kept_indices(std::size_t d, const AxisPlan& plan, unsigned n, const Limits& limits) {
  std::vector<std::size_t> out;
  std::vector<long> counts(plan.target.size(), 0);
  std::function<void(unsigned, std::size_t)> rec = [&](unsigned pos, std::size_t flat) {
    if (pos == n) {
      if (out.size() >= limits.max_entries) throw GuardError("kept index list exceeds the entry guard");
      out.push_back(flat);
      return;
    }
    for (std::size_t i = 0; i < d; ++i) {
      auto id = plan.id_of_index[i];
      if (counts[id] + 1 > plan.target[id]) continue;
      ++counts[id];
      rec(pos + 1, flat * d + i);
      --counts[id];
    }
  };
  rec(0, 0);
  return out;
}

std::size_t position_of(const std::vector<std::size_t>& kept, std::size_t flat) {
  auto it = std::lower_bound(kept.begin(), kept.end(), flat);
  return static_cast<std::size_t>(it - kept.begin());
}

std::vector<std::size_t> digits(std::size_t flat, std::size_t d, unsigned n) {
  std::vector<std::size_t> out(n);
  for (unsigned i = n; i-- > 0;) {
    out[i] = flat % d;
    flat /= d;
  }
  return out;
}

Label concat_label(const std::vector<Label>& axis_labels, std::size_t flat, std::size_t d, unsigned n) {
  Label out;
  for (auto i : digits(flat, d, n)) {
    const auto& l = axis_labels[i];
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

Label parse_label(const nlohmann::json& j) {
  if (j.is_number_integer()) return {j.get<long>()};
  if (j.is_array()) {
    Label out;
    for (const auto& x : j) {
      if (!x.is_number_integer()) throw ParseError("label coordinates must be integers");
      out.push_back(x.get<long>());
    }
    return out;
  }
  throw ParseError("a label must be an integer or an array of integers");
}

nlohmann::json label_json(const Label& l) {
  if (l.size() == 1) return l[0];
  return l;
}

}  // namespace

void Blocking::validate(const Tensor3& t) const {
  for (std::size_t a = 0; a < 3; ++a) {
    if (labels[a].size() != t.dim(static_cast<int>(a))) {
      throw DomainError("blocking does not cover axis " + std::to_string(a));
    }
    for (const auto& l : labels[a]) {
      if (l.size() != r) throw DomainError("label arity mismatch on axis " + std::to_string(a));
    }
  }
}

LabelTriple Blocking::block_of(const Index3& ix) const {
  return {labels[0].at(ix[0]), labels[1].at(ix[1]), labels[2].at(ix[2])};
}

Blocking grading_blocking(const std::vector<long>& degrees) {
  Blocking b;
  for (long d : degrees) {
    b.labels[0].push_back({d});
    b.labels[1].push_back({d});
    b.labels[2].push_back({-d});
  }
  return b;
}

Blocking cw_blocking(std::size_t n) {
  if (n < 3) throw DomainError("the CW blocking needs n >= 3");
  std::vector<long> degrees(n, 1);
  degrees.front() = 0;
  degrees.back() = 2;
  return grading_blocking(degrees);
}

Blocking power_blocking(const Blocking& b, unsigned n, const Limits& limits) {
  Blocking out;
  out.r = b.r * n;
  for (std::size_t a = 0; a < 3; ++a) {
    std::size_t d = b.labels[a].size();
    std::size_t total = checked_pow(d, n, limits.max_entries, "power blocking");
    out.labels[a].reserve(total);
    for (std::size_t f = 0; f < total; ++f) out.labels[a].push_back(concat_label(b.labels[a], f, d, n));
  }
  if (n == 0) out.r = 0;
  return out;
}

Tensor3 tensor_TB() {
  Tensor3 t({2, 2, 2});
  t.set({0, 0, 0}, 1);
  t.set({0, 1, 1}, 1);
  t.set({1, 0, 1}, 1);
  return t;
}

void BlockDistribution::validate() const {
  if (support.size() != probs.size()) throw DomainError("support and probs differ in length");
  if (support.empty()) throw DomainError("empty distribution");
  std::set<LabelTriple> seen;
  std::size_t r = support.front()[0].size();
  Rat total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (const auto& l : support[i]) {
      if (l.size() != r) throw DomainError("label arity mismatch in distribution support");
    }
    if (!seen.insert(support[i]).second) throw DomainError("repeated block in distribution support");
    if (probs[i] < 0) throw DomainError("negative probability");
    total += probs[i];
  }
  if (total != 1) throw DomainError("probabilities do not sum to 1");
}

Rat BlockDistribution::prob(const LabelTriple& b) const {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] == b) return probs[i];
  }
  return 0;
}

BlockDistribution uniform_distribution(const std::vector<LabelTriple>& support) {
  if (support.empty()) throw DomainError("empty support");
  BlockDistribution p;
  p.support = support;
  p.probs.assign(support.size(), Rat(1) / static_cast<long>(support.size()));
  return p;
}

BlockDistribution cw_distribution(const Rat& p, const Rat& q) {
  if (p < 0 || q < 0 || p + q != Rat(1) / 3) throw DomainError("need p, q >= 0 with p + q = 1/3");
  BlockDistribution d;
  d.support = {
      {Label{0}, Label{1}, Label{-1}}, {Label{1}, Label{0}, Label{-1}}, {Label{1}, Label{1}, Label{-2}},
      {Label{0}, Label{0}, Label{0}},  {Label{0}, Label{2}, Label{-2}}, {Label{2}, Label{0}, Label{-2}},
  };
  d.probs = {p, p, p, q, q, q};
  return d;
}

std::vector<Block> support_blocks(const Tensor3& t, const Blocking& b) {
  b.validate(t);
  std::map<LabelTriple, Block> blocks;
  for (const auto& [ix, v] : t.entries()) {
    auto key = b.block_of(ix);
    auto [it, fresh] = blocks.try_emplace(key);
    Block& blk = it->second;
    if (fresh) {
      blk.labels = key;
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t i = 0; i < b.labels[a].size(); ++i) {
          if (b.labels[a][i] == key[a]) blk.indices[a].push_back(i);
        }
        blk.format[a] = blk.indices[a].size();
      }
      blk.tensor = Tensor3(blk.format);
    }
    Index3 local;
    for (std::size_t a = 0; a < 3; ++a) local[a] = position_of(blk.indices[a], ix[a]);
    blk.tensor.set(local, v);
  }
  std::vector<Block> out;
  out.reserve(blocks.size());
  for (auto& [k, blk] : blocks) out.push_back(std::move(blk));
  return out;
}

bool is_tight(const Tensor3& t, const Blocking& b) {
  b.validate(t);
  for (const auto& [ix, v] : t.entries()) {
    auto key = b.block_of(ix);
    for (std::size_t c = 0; c < b.r; ++c) {
      if (key[0][c] + key[1][c] + key[2][c] != 0) return false;
    }
  }
  return true;
}

std::array<Marginal, 3> marginals(const BlockDistribution& p) {
  p.validate();
  std::array<Marginal, 3> out;
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    for (std::size_t a = 0; a < 3; ++a) out[a][p.support[i][a]] += p.probs[i];
  }
  for (auto& m : out) std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return out;
}

bool marginals_equal(const std::array<Marginal, 3>& m) {
  std::array<std::vector<Rat>, 3> values;
  for (std::size_t a = 0; a < 3; ++a) {
    for (const auto& [l, q] : m[a]) values[a].push_back(q);
    std::sort(values[a].begin(), values[a].end());
  }
  return values[0] == values[1] && values[1] == values[2];
}

std::string to_string(Uniqueness u) {
  switch (u) {
    case Uniqueness::unique: return "unique";
    case Uniqueness::non_unique: return "non_unique";
    default: return "unknown";
  }
}

Uniqueness marginal_uniqueness(const BlockDistribution& p) {
  p.validate();
  std::size_t cols = p.support.size();
  std::vector<exact::RatVector> rows;
  for (std::size_t a = 0; a < 3; ++a) {
    std::map<Label, exact::RatVector> by_label;
    for (std::size_t i = 0; i < cols; ++i) {
      auto& row = by_label.try_emplace(p.support[i][a], exact::RatVector(cols, Rat(0))).first->second;
      row[i] = 1;
    }
    for (auto& [l, row] : by_label) rows.push_back(std::move(row));
  }
  auto kernel = exact::kernel_basis(exact::QMatrix::from_rows(rows));
  if (kernel.empty()) return Uniqueness::unique;
  for (const auto& v : kernel) {
    bool plus = true;
    bool minus = true;
    for (std::size_t i = 0; i < cols; ++i) {
      if (p.probs[i] != 0) continue;
      if (v[i] < 0) plus = false;
      if (v[i] > 0) minus = false;
    }
    if (plus || minus) return Uniqueness::non_unique;
  }
  return Uniqueness::unknown;
}

std::vector<std::size_t> composition_indices(const Tensor3& t, const Blocking& b, const Marginal& m, int axis,
                                             unsigned n, const Limits& limits) {
  b.validate(t);
  auto plan = plan_axis(b, &m, axis, n);
  return kept_indices(t.dim(axis), plan, n, limits);
}

SweetPiece sp_extract(const Tensor3& t, const Blocking& b, const BlockDistribution& p, unsigned n,
                      const Limits& limits, bool require_tight) {
  b.validate(t);
  auto m = marginals(p);
  if (!p.support.empty() && p.support.front()[0].size() != b.r) {
    throw DomainError("distribution labels and blocking differ in arity");
  }
  if (require_tight && !is_tight(t, b)) throw DomainError("tensor is not tight for this blocking");
  if (!marginals_equal(m)) throw DomainError("the three marginals of P differ");
  check_distribution_integral(p, n);

  std::array<AxisPlan, 3> plans;
  SweetPiece sp;
  Index3 dims{};
  for (int a = 0; a < 3; ++a) {
    auto ua = static_cast<std::size_t>(a);
    checked_pow(t.dim(a), n, static_cast<std::size_t>(-1) / (t.dim(a) + 1), "flat index");
    plans[ua] = plan_axis(b, &m[ua], a, n);
    sp.kept[ua] = kept_indices(t.dim(a), plans[ua], n, limits);
    dims[ua] = sp.kept[ua].size();
  }
  sp.tensor = Tensor3(dims);
  walk_entries(t, plans, n, limits, [&](const std::array<std::size_t, 3>& flat, const Rat& v) {
    Index3 ix;
    for (std::size_t a = 0; a < 3; ++a) ix[a] = position_of(sp.kept[a], flat[a]);
    sp.tensor.add(ix, v);
  });

  sp.blocking.r = b.r * n;
  for (std::size_t a = 0; a < 3; ++a) {
    std::set<Label> distinct;
    for (auto f : sp.kept[a]) {
      auto l = concat_label(b.labels[a], f, t.dim(static_cast<int>(a)), n);
      distinct.insert(l);
      sp.blocking.labels[a].push_back(std::move(l));
    }
    sp.p_axes[a] = distinct.size();
  }
  sp.p_T = sp.p_axes[0];

  if (t.labels()) {
    tensor::Tensor3::Labels names;
    for (std::size_t a = 0; a < 3; ++a) {
      for (auto f : sp.kept[a]) {
        std::string s;
        for (auto i : digits(f, t.dim(static_cast<int>(a)), n)) {
          if (!s.empty()) s += "|";
          s += (*t.labels())[a][i];
        }
        names[a].push_back(std::move(s));
      }
    }
    sp.tensor.set_labels(std::move(names));
  }
  return sp;
}

Tensor3 chimney(const Tensor3& t, const Blocking& b, const BlockDistribution& p, unsigned n,
                std::pair<int, int> fixed, const Limits& limits) {
  b.validate(t);
  auto [f1, f2] = fixed;
  if (f1 == f2 || f1 < 0 || f2 < 0 || f1 > 2 || f2 > 2) throw DomainError("fixed pair must be two distinct axes");
  auto m = marginals(p);
  if (!m[static_cast<std::size_t>(f1)].empty() &&
      m[static_cast<std::size_t>(f1)].begin()->first.size() != b.r) {
    throw DomainError("distribution labels and blocking differ in arity");
  }

  std::array<AxisPlan, 3> plans;
  std::array<std::vector<std::size_t>, 3> kept;
  Index3 dims{};
  for (int a = 0; a < 3; ++a) {
    auto ua = static_cast<std::size_t>(a);
    bool restricted = a == f1 || a == f2;
    std::size_t full = checked_pow(t.dim(a), n, static_cast<std::size_t>(-1) / (t.dim(a) + 1), "flat index");
    plans[ua] = plan_axis(b, restricted ? &m[ua] : nullptr, a, n);
    if (restricted) {
      kept[ua] = kept_indices(t.dim(a), plans[ua], n, limits);
      dims[ua] = kept[ua].size();
    } else {
      dims[ua] = full;
    }
  }
  Tensor3 out(dims);
  walk_entries(t, plans, n, limits, [&](const std::array<std::size_t, 3>& flat, const Rat& v) {
    Index3 ix;
    for (std::size_t a = 0; a < 3; ++a) ix[a] = plans[a].restricted ? position_of(kept[a], flat[a]) : flat[a];
    out.add(ix, v);
  });
  return out;
}

SweetCheck check_sweet_piece(const SweetPiece& sp) {
  SweetCheck c;
  c.p_equal = sp.p_axes[0] == sp.p_axes[1] && sp.p_axes[1] == sp.p_axes[2];
  auto blocks = support_blocks(sp.tensor, sp.blocking);
  c.blocks = blocks.size();
  if (blocks.empty()) return c;
  std::vector<LabelTriple> support;
  for (const auto& blk : blocks) support.push_back(blk.labels);
  auto m = marginals(uniform_distribution(support));
  c.uniform_marginals_equal = marginals_equal(m);
  for (const auto& axis : m) {
    for (const auto& [l, q] : axis) {
      if (q != axis.begin()->second) c.uniform_marginals_equal = false;
    }
  }
  auto multiset = [](const Block& blk) {
    std::vector<Rat> vals;
    for (const auto& [ix, v] : blk.tensor.entries()) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    return vals;
  };
  auto reference = multiset(blocks.front());
  std::vector<std::size_t> ref_format(blocks.front().format.begin(), blocks.front().format.end());
  std::sort(ref_format.begin(), ref_format.end());
  c.block_formats_equal = true;
  c.block_multisets_equal = true;
  for (const auto& blk : blocks) {
    std::vector<std::size_t> f(blk.format.begin(), blk.format.end());
    std::sort(f.begin(), f.end());
    if (f != ref_format) c.block_formats_equal = false;
    if (multiset(blk) != reference) c.block_multisets_equal = false;
  }
  return c;
}

Tensor3 toric_degenerate(const Tensor3& t, const Blocking& b, const Weights& w) {
  b.validate(t);
  for (std::size_t a = 0; a < 3; ++a) {
    if (w[a].size() != t.dim(static_cast<int>(a))) throw DomainError("weights do not cover axis " + std::to_string(a));
    std::map<Label, long> by_label;
    for (std::size_t i = 0; i < w[a].size(); ++i) {
      auto [it, fresh] = by_label.emplace(b.labels[a][i], w[a][i]);
      if (!fresh && it->second != w[a][i]) {
        throw DomainError("weights are not constant on a label class of axis " + std::to_string(a));
      }
    }
  }
  Tensor3 out(t.dims());
  for (const auto& [ix, v] : t.entries()) {
    long weight = w[0][ix[0]] + w[1][ix[1]] + w[2][ix[2]];
    if (weight < 0) throw DomainError("invalid degeneration: a support block has negative weight");
    if (weight == 0) out.set(ix, v);
  }
  if (t.labels()) out.set_labels(*t.labels());
  return out;
}

Weights label_weights(const Blocking& b) {
  Weights w;
  for (std::size_t a = 0; a < 3; ++a) {
    for (const auto& l : b.labels[a]) {
      if (l.empty()) throw DomainError("empty label");
      w[a].push_back(l[0]);
    }
  }
  return w;
}

std::size_t zero_layers(const Tensor3& t, int axis) {
  if (axis < 0 || axis > 2) throw DomainError("axis must be 0, 1 or 2");
  std::set<std::size_t> used;
  for (const auto& [ix, v] : t.entries()) used.insert(ix[static_cast<std::size_t>(axis)]);
  return t.dim(axis) - used.size();
}

std::string to_string(Ambient a) {
  switch (a) {
    case Ambient::group_power: return "group_power";
    case Ambient::z2_power: return "z2_power";
    default: return "other";
  }
}

Int substitution_bound(const Int& ambient_dim, const Int& zero_layer_count, Ambient ambient, bool override_minimal) {
  if (ambient == Ambient::other && !override_minimal) {
    throw DomainError("ambient tensor is not a known minimal-rank tensor; pass an explicit override");
  }
  if (zero_layer_count < 0 || zero_layer_count > ambient_dim) throw DomainError("zero-layer count exceeds the dimension");
  return ambient_dim - zero_layer_count;
}

Int formula_sweet_term(unsigned n, unsigned big_n, const Rat& p, const Rat& q) {
  if (n < 3) throw DomainError("need n >= 3");
  if (p < 0 || q < 0 || p + q != Rat(1) / 3) throw DomainError("need p, q >= 0 with p + q = 1/3");
  if (Rat(p * big_n).get_den() != 1 || Rat(q * big_n).get_den() != 1) throw DomainError("pN and qN must be integers");
  if (big_n % 3 != 0 || big_n < 3) throw DomainError("N must be a positive multiple of 3");
  long choose = 2 * static_cast<long>(big_n) / 3 + 1;
  unsigned expo = big_n / 3 - 1;
  Int pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), n - 1, expo);
  return exact::binomial(big_n, choose) * pw;
}

Int formula_sweet_rank(unsigned n, unsigned big_n, const Rat& p, const Rat& q) {
  Int term = formula_sweet_term(n, big_n, p, q);
  Int total;
  mpz_ui_pow_ui(total.get_mpz_t(), n, big_n);
  return total - term;
}

Int formula_pratt(unsigned k) {
  if (k < 1) throw DomainError("need k >= 1");
  Int out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, 3 * k - 1);
  for (unsigned i = k + 1; i <= 3 * k / 2; ++i) out -= exact::binomial(3 * k, 2 * i);
  return out;
}

Int even_symdiff_count(unsigned k) {
  if (k < 1) throw DomainError("need k >= 1");
  if (k > 5) throw GuardError("enumeration is limited to k <= 5");
  unsigned n = 3 * k;
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (static_cast<unsigned>(std::popcount(s)) == k) subsets.push_back(s);
  }
  std::vector<bool> hit(std::size_t{1} << n, false);
  for (auto a : subsets) {
    for (auto b : subsets) hit[a ^ b] = true;
  }
  return Int(static_cast<unsigned long>(std::count(hit.begin(), hit.end(), true)));
}

Int even_symdiff_closed(unsigned k) {
  Int out = 0;
  for (unsigned i = 0; i <= k; ++i) out += exact::binomial(3 * k, 2 * i);
  return out;
}

double omega_bound(const Int& a, const Rat& r, const Rat& p) {
  if (a <= 1) throw DomainError("need a > 1");
  if (p <= 0 || r < p) throw DomainError("need r >= p > 0");
  Rat ratio = r / p;
  double num = std::log(ratio.get_num().get_d()) - std::log(ratio.get_den().get_d());
  return num / std::log(a.get_d());
}

std::vector<Int> veronese_dims(const std::vector<Int>& graded_dims, unsigned k) {
  if (k < 1) throw DomainError("need k >= 1");
  std::vector<Int> out;
  for (std::size_t i = 0; i < graded_dims.size(); i += k) out.push_back(graded_dims[i]);
  return out;
}

std::vector<Int> tensor_power_graded_dims(unsigned m, unsigned big_n) {
  std::vector<Int> out;
  for (long i = 0; i <= 2 * static_cast<long>(big_n); ++i) {
    Int total = 0;
    for (long j = 0; j <= i / 2; ++j) {
      Int pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), m, static_cast<unsigned long>(i - 2 * j));
      total += exact::binomial(big_n, j) * exact::binomial(big_n - j, i - 2 * j) * pw;
    }
    out.push_back(total);
  }
  return out;
}

Int veronese_subalgebra_dim_bruteforce(unsigned k) {
  if (k < 1) throw DomainError("need k >= 1");
  if (k > 2) throw GuardError("monomial closure is limited to k <= 2");
  // Squarefree monomials in 6k variables form a basis of the tensor power.
  unsigned vars = 6 * k;
  std::vector<std::uint32_t> gens;
  for (std::uint32_t s = 0; s < (1u << vars); ++s) {
    if (static_cast<unsigned>(std::popcount(s)) == k) gens.push_back(s);
  }
  std::vector<bool> in(std::size_t{1} << vars, false);
  std::vector<std::uint32_t> frontier{0};
  in[0] = true;
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (auto s : frontier) {
      for (auto g : gens) {
        if (s & g) continue;
        if (!in[s | g]) {
          in[s | g] = true;
          next.push_back(s | g);
        }
      }
    }
    frontier = std::move(next);
  }
  return Int(static_cast<unsigned long>(std::count(in.begin(), in.end(), true)));
}

Int veronese_subalgebra_dim_formula(unsigned k) {
  Int total = 0;
  for (long a = 0; a <= static_cast<long>(k); ++a) {
    total += exact::binomial(3 * k, a) * exact::binomial(3 * static_cast<long>(k) - a, 2 * static_cast<long>(k) - a);
  }
  return 2 + 2 * total;
}

nlohmann::json to_json(const Blocking& b) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& axis : b.labels) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : axis) arr.push_back(label_json(l));
    axes.push_back(arr);
  }
  return {{"labels", axes}};
}

nlohmann::json to_json(const BlockDistribution& p) {
  nlohmann::json support = nlohmann::json::array();
  nlohmann::json probs = nlohmann::json::array();
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    support.push_back({label_json(p.support[i][0]), label_json(p.support[i][1]), label_json(p.support[i][2])});
    probs.push_back(exact::to_string(p.probs[i]));
  }
  return {{"support", support}, {"probs", probs}};
}

nlohmann::json to_json(const Marginal& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [l, q] : m) out.push_back({label_json(l), exact::to_string(q)});
  return out;
}

Blocking blocking_from_json(const nlohmann::json& j) {
  try {
    const auto& axes = j.at("labels");
    if (!axes.is_array() || axes.size() != 3) throw ParseError("blocking needs three label arrays");
    Blocking b;
    bool first = true;
    for (std::size_t a = 0; a < 3; ++a) {
      for (const auto& x : axes[a]) {
        auto l = parse_label(x);
        if (first) {
          b.r = l.size();
          first = false;
        }
        b.labels[a].push_back(std::move(l));
      }
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad blocking JSON: ") + e.what());
  }
}

BlockDistribution distribution_from_json(const nlohmann::json& j) {
  try {
    BlockDistribution p;
    for (const auto& triple : j.at("support")) {
      if (!triple.is_array() || triple.size() != 3) throw ParseError("support entries must be label triples");
      p.support.push_back({parse_label(triple[0]), parse_label(triple[1]), parse_label(triple[2])});
    }
    for (const auto& q : j.at("probs")) {
      p.probs.push_back(q.is_string() ? exact::parse_rat(q.get<std::string>()) : Rat(q.get<long>()));
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad distribution JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("bad distribution: ") + e.what());
  }
}

Weights weights_from_json(const nlohmann::json& j) {
  try {
    const auto& axes = j.contains("weights") ? j.at("weights") : j;
    if (!axes.is_array() || axes.size() != 3) throw ParseError("weights need three integer arrays");
    Weights w;
    for (std::size_t a = 0; a < 3; ++a) w[a] = axes[a].get<std::vector<long>>();
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad weights JSON: ") + e.what());
  }
}

}  // namespace apolarium::sweet
