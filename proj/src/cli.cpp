#include "apolarium/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>

#include "apolarium/apolar.hpp"
#include "apolarium/encompass.hpp"
#include "apolarium/errors.hpp"
#include "apolarium/exact.hpp"
#include "apolarium/poly.hpp"
#include "apolarium/sweet.hpp"
#include "apolarium/tensor3.hpp"

namespace apolarium::cli {

namespace {

using exact::Int;
using exact::Rat;
using nlohmann::json;
using poly::Poly;
using tensor::Tensor3;

struct Result {
  json inputs = json::object();
  json outputs = json::object();
  std::vector<std::string> provenance;
  int code = Exit::ok;
};

std::string big(const Int& v) { return v.get_str(); }

json rat_json(const Rat& r) { return exact::to_string(r); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<long> parse_ints(const std::string& s) {
  std::vector<long> out;
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(part, &used);
      if (used != part.size()) throw ParseError("bad integer '" + part + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + part + "'");
    }
  }
  return out;
}

// Inline JSON text or a path to a JSON file.
json load_json(const std::string& spec) {
  std::string text = spec;
  if (spec.empty() || (spec.front() != '{' && spec.front() != '[')) {
    if (!std::filesystem::exists(spec)) throw ParseError("no such file: " + spec);
    std::ifstream in(spec);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Poly load_poly(const std::string& text, const Limits& limits) {
  Poly p = poly::parse(text);
  if (p.size() > limits.max_terms) throw GuardError("polynomial exceeds the term guard");
  if (!p.is_zero() && static_cast<unsigned>(p.degree()) > limits.max_degree) throw GuardError("polynomial exceeds the degree guard");
  return p;
}

Tensor3 load_tensor(const std::string& spec, const Limits& limits) {
  if (spec.rfind("cw:", 0) == 0) {
    auto n = parse_ints(spec.substr(3));
    if (n.size() != 1 || n[0] < 1) throw ParseError("expected cw:<n>");
    return tensor::cw(static_cast<std::size_t>(n[0]));
  }
  if (spec.rfind("group:", 0) == 0) {
    tensor::AbelianGroup g;
    for (long o : parse_ints(spec.substr(6))) {
      if (o < 1) throw DomainError("group orders must be positive");
      g.orders.push_back(static_cast<unsigned>(o));
    }
    if (g.order() > limits.max_entries) throw GuardError("group exceeds the entry guard");
    return tensor::group_tensor(g);
  }
  if (spec == "tb") return sweet::tensor_TB();
  return tensor::tensor_from_json(load_json(spec));
}

sweet::Blocking load_blocking(const std::string& spec, const Tensor3& t) {
  if (spec == "cw") return sweet::cw_blocking(t.dim(0));
  if (spec.rfind("grading:", 0) == 0) return sweet::grading_blocking(parse_ints(spec.substr(8)));
  return sweet::blocking_from_json(load_json(spec));
}

sweet::BlockDistribution load_distribution(const std::string& spec, const Tensor3& t, const sweet::Blocking& b) {
  if (spec == "uniform") {
    std::vector<sweet::LabelTriple> support;
    for (const auto& blk : sweet::support_blocks(t, b)) support.push_back(blk.labels);
    return sweet::uniform_distribution(support);
  }
  if (spec.rfind("cw:", 0) == 0) {
    auto parts = split(spec.substr(3), ',');
    if (parts.size() != 2) throw ParseError("expected cw:<p>,<q>");
    return sweet::cw_distribution(exact::parse_rat(parts[0]), exact::parse_rat(parts[1]));
  }
  if (spec.rfind("point:", 0) == 0) {
    auto l = parse_ints(spec.substr(6));
    if (l.size() != 3) throw ParseError("expected point:<a1>,<a2>,<a3>");
    return {{{sweet::Label{l[0]}, sweet::Label{l[1]}, sweet::Label{l[2]}}}, {Rat(1)}};
  }
  return sweet::distribution_from_json(load_json(spec));
}

std::pair<int, int> parse_pair(const std::string& s) {
  auto v = parse_ints(s);
  if (v.size() != 2 || v[0] < 1 || v[0] > 3 || v[1] < 1 || v[1] > 3) throw ParseError("expected two axes in 1..3");
  return {static_cast<int>(v[0] - 1), static_cast<int>(v[1] - 1)};
}

json string_list(const std::vector<Poly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(poly::to_string(p));
  return out;
}

// Flattens a JSON object into "path<TAB>value" lines.
void print_table(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_table(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) print_table(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact apolarity, catalecticant and sweet-piece computations", "apolarium"};
  app.fallthrough();
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  Limits limits;
  bool table = false;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--max-terms", limits.max_terms, "term guard")->capture_default_str();
  app.add_option("--max-entries", limits.max_entries, "entry guard")
      ->envname("APOLARIUM_MAX_ENTRIES")
      ->capture_default_str();
  app.add_option("--max-degree", limits.max_degree, "degree guard")->capture_default_str();
  app.add_flag("--table", table, "print outputs as path/value lines");

  std::string poly_text;
  std::string var = "x0";
  std::optional<unsigned> k_opt;
  std::optional<unsigned> degree_opt;
  unsigned d = 1;
  unsigned power = 1;
  bool untwisted = false;
  std::string sigma_text;

  auto poly_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("poly", poly_text, "polynomial")->required();
    return c;
  };
  auto* c_dim = poly_cmd("apolar-dim", "dimension of the apolar algebra");
  auto* c_hilb = poly_cmd("hilbert", "Hilbert function of the apolar algebra");
  auto* c_ann = poly_cmd("annihilator", "annihilator basis up to a degree");
  c_ann->add_option("--degree", degree_opt, "degree bound (default deg f + 1)");
  auto* c_cat = poly_cmd("cat-rank", "catalecticant rank");
  c_cat->add_option("--k", k_opt, "dual degree (default: middle)");
  auto* c_twist = poly_cmd("twist", "twist with respect to a variable");
  c_twist->add_option("--var", var)->capture_default_str();
  auto* c_enc = poly_cmd("encompass-check", "encompassing, growth and Jacobian equivalence");
  auto* c_growth = poly_cmd("growth", "dim Ap(f^d) against binom(l+d-1, d)");
  c_growth->add_option("--d", d, "largest power")->capture_default_str();
  auto* c_ext = poly_cmd("extend", "encompassing extension g and its homogenization G");
  c_ext->add_option("--sigma", sigma_text, "semicolon-separated dual operators");
  auto* c_taut = poly_cmd("verify-taut", "annihilator of the dehomogenization kills the twist");
  c_taut->add_option("--var", var)->capture_default_str();
  c_taut->add_option("--power", power, "check F^power")->capture_default_str();
  c_taut->add_option("--bound", degree_opt, "annihilator degree bound");
  c_taut->add_flag("--untwisted", untwisted, "skip the twist (control)");
  auto* c_main = poly_cmd("verify-main-thm", "twisted catalecticant rank of F^d");
  c_main->add_option("--var", var)->capture_default_str();
  c_main->add_option("--d", d)->capture_default_str();

  // tensor
  auto* c_tensor = app.add_subcommand("tensor", "tensor constructions");
  c_tensor->require_subcommand(1);
  std::size_t n_size = 3;
  std::string orders_text;
  std::string tensor_spec;
  std::string tensor_b;
  std::string slices_text;
  std::size_t k_size = 1;
  auto* c_make = c_tensor->add_subcommand("make", "build a tensor");
  c_make->require_subcommand(1);
  auto* m_cw = c_make->add_subcommand("cw", "Coppersmith-Winograd tensor");
  m_cw->add_option("--n", n_size)->required();
  auto* m_group = c_make->add_subcommand("group", "group tensor of Z/m1 x ... x Z/mr");
  m_group->add_option("--orders", orders_text, "comma-separated orders")->required();
  auto* m_alg = c_make->add_subcommand("algebra", "structure tensor of Ap(f)");
  m_alg->add_option("--poly", poly_text)->required();
  auto* m_atk = c_make->add_subcommand("atk", "algebra A_{T,k}");
  m_atk->add_option("--slices", slices_text, "JSON {n, slices} or file")->required();
  m_atk->add_option("--k", k_size)->capture_default_str();
  auto* m_ts = c_make->add_subcommand("ts", "partially symmetric T_S");
  m_ts->add_option("--tensor", tensor_spec)->required();
  auto* m_onegen = c_make->add_subcommand("onegen", "one-generic extension T'");
  m_onegen->add_option("--tensor", tensor_spec)->required();
  m_onegen->add_option("--k", k_size)->required();
  auto* c_kron = c_tensor->add_subcommand("kron", "Kronecker product or power");
  c_kron->add_option("--tensor", tensor_spec)->required();
  c_kron->add_option("--with", tensor_b, "second factor");
  c_kron->add_option("--power", power, "Kronecker power")->capture_default_str();

  // sweet
  auto* c_sweet = app.add_subcommand("sweet", "blockings, sweet pieces and bounds");
  c_sweet->require_subcommand(1);
  std::string blocking_spec = "cw";
  std::string dist_spec = "uniform";
  std::string weights_spec = "labels";
  std::string fixed_text = "1,2";
  unsigned big_n = 1;
  int axis = 3;
  bool no_tight = false;
  auto tensor_opts = [&](CLI::App* c) {
    c->add_option("--tensor", tensor_spec, "cw:<n>, group:<orders>, tb, JSON or file")->required();
    c->add_option("--blocking", blocking_spec, "cw, grading:<degrees>, JSON or file")->capture_default_str();
  };
  auto* s_support = c_sweet->add_subcommand("support", "support blocks");
  tensor_opts(s_support);
  auto* s_tight = c_sweet->add_subcommand("tight", "tightness");
  tensor_opts(s_tight);
  auto* s_marg = c_sweet->add_subcommand("marginals", "marginals and uniqueness");
  s_marg->add_option("--dist", dist_spec, "uniform, cw:<p>,<q>, point:<a,b,c>, JSON or file")->required();
  s_marg->add_option("--tensor", tensor_spec, "tensor for a uniform distribution");
  s_marg->add_option("--blocking", blocking_spec)->capture_default_str();
  auto* s_extract = c_sweet->add_subcommand("extract", "sweet piece SP_{P,N}");
  tensor_opts(s_extract);
  s_extract->add_option("--dist", dist_spec)->capture_default_str();
  s_extract->add_option("--n", big_n)->required();
  s_extract->add_flag("--no-tight-check", no_tight);
  auto* s_chimney = c_sweet->add_subcommand("chimney", "chimney with two fixed axes");
  tensor_opts(s_chimney);
  s_chimney->add_option("--dist", dist_spec)->capture_default_str();
  s_chimney->add_option("--n", big_n)->required();
  s_chimney->add_option("--fixed", fixed_text, "two axes in 1..3")->capture_default_str();
  auto* s_degen = c_sweet->add_subcommand("degenerate", "toric degeneration");
  tensor_opts(s_degen);
  s_degen->add_option("--weights", weights_spec, "labels, JSON or file")->capture_default_str();
  auto* s_zero = c_sweet->add_subcommand("zero-layers", "count zero slices");
  s_zero->add_option("--tensor", tensor_spec)->required();
  s_zero->add_option("--axis", axis, "axis in 1..3")->capture_default_str();
  auto* s_bound = c_sweet->add_subcommand("bound", "substitution bound or the sweet-rank formula");
  std::string ambient_dim_text;
  std::string zeros_text;
  std::string ambient_text = "group";
  bool override_minimal = false;
  std::string formula_text;
  s_bound->add_option("--ambient-dim", ambient_dim_text);
  s_bound->add_option("--zeros", zeros_text);
  s_bound->add_option("--ambient", ambient_text, "group, z2 or other")->capture_default_str();
  s_bound->add_flag("--override", override_minimal, "accept a non-whitelisted ambient tensor");
  s_bound->add_option("--formula", formula_text, "n,N,p,q");
  auto* s_pratt = c_sweet->add_subcommand("pratt", "rank bound of the partition tensor");
  unsigned k_pratt = 1;
  s_pratt->add_option("--k", k_pratt)->required();
  auto* s_omega = c_sweet->add_subcommand("omega", "log_a(r/p)");
  std::string a_text;
  std::string r_text;
  std::string p_text;
  s_omega->add_option("--a", a_text)->required();
  s_omega->add_option("--r", r_text)->required();
  s_omega->add_option("--p", p_text)->required();
  auto* s_vero = c_sweet->add_subcommand("veronese", "every k-th graded dimension");
  std::string dims_text;
  std::optional<unsigned> binom_n;
  unsigned k_vero = 1;
  s_vero->add_option("--dims", dims_text, "comma-separated graded dimensions");
  s_vero->add_option("--binom", binom_n, "use binom(n, i)");
  s_vero->add_option("--k", k_vero)->required();

  auto* c_suite = app.add_subcommand("paper-suite", "run the regression ledger");
  std::string only;
  c_suite->add_option("--only", only, "run entries whose id starts with this prefix");

  std::string command;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return Exit::usage;
  }

  for (auto* c = app.get_subcommands().front();;) {
    command += (command.empty() ? "" : " ") + c->get_name();
    if (c->get_subcommands().empty()) break;
    c = c->get_subcommands().front();
  }

  Result r;
  try {
    auto with_poly = [&]() {
      Poly f = load_poly(poly_text, limits);
      r.inputs["poly"] = poly::to_string(f);
      return f;
    };
    if (c_dim->parsed()) {
      Poly f = with_poly();
      r.outputs["dim"] = apolar::apolar_dim(f, limits);
      r.provenance = {"apolar algebra dimension via the partials space"};
    } else if (c_hilb->parsed()) {
      Poly f = with_poly();
      auto hf = apolar::hilbert_function(f, limits);
      r.outputs["hilbert"] = hf;
      std::size_t total = 0;
      for (auto h : hf) total += h;
      r.outputs["dim"] = total;
      r.provenance = {"Hilbert function of the apolar algebra"};
    } else if (c_ann->parsed()) {
      Poly f = with_poly();
      auto gens = apolar::annihilator_upto(f, degree_opt, limits);
      r.inputs["degree"] = degree_opt ? json(*degree_opt) : json(f.degree() + 1);
      r.outputs["basis"] = string_list(gens);
      r.outputs["count"] = gens.size();
      r.provenance = {"annihilator of f in the dual ring"};
    } else if (c_cat->parsed()) {
      Poly f = with_poly();
      if (!f.is_homogeneous()) throw DomainError("catalecticants need a homogeneous form");
      unsigned k = k_opt ? *k_opt : f.degree() / 2;
      r.inputs["k"] = k;
      r.outputs["rank"] = apolar::catalecticant_rank(f, k);
      r.outputs["lower_bound_for"] = "border rank";
      r.outputs["out_of_scope"] = out_of_scope();
      r.provenance = {"catalecticant lower bound on border rank"};
    } else if (c_twist->parsed()) {
      Poly f = with_poly();
      r.inputs["var"] = var;
      r.outputs["twisted"] = poly::to_string(poly::twist(f, var));
      r.provenance = {"twist tw(F)"};
    } else if (c_enc->parsed()) {
      Poly f = with_poly();
      bool enc = encompass::is_encompassing(f, limits);
      bool almost = encompass::is_almost_encompassing(f, limits);
      auto probe = encompass::gradient_generic_rank(f, seed, limits);
      json growth = json::array();
      bool all_equal = true;
      for (unsigned e = 1; e <= std::max<unsigned>(1, static_cast<unsigned>(f.degree())); ++e) {
        auto g = encompass::check_maximal_growth(f, e, limits);
        growth.push_back({{"d", e}, {"dim", g.lhs}, {"binom", big(g.rhs)}, {"equal", g.equal}});
        all_equal = all_equal && g.equal;
      }
      bool jac = probe.rank == probe.target;
      bool consistent = enc == all_equal && enc == jac;
      r.outputs = {{"encompassing", enc},
                   {"almost_encompassing", almost},
                   {"maximal_growth", all_equal},
                   {"growth", growth},
                   {"jacobian", {{"rank", probe.rank}, {"target", probe.target}, {"points_tried", probe.points_tried}}},
                   {"equivalence_consistent", consistent}};
      r.provenance = {"encompassing iff maximal growth iff dominant gradient map"};
      if (!consistent) r.code = Exit::violated;
    } else if (c_growth->parsed()) {
      Poly f = with_poly();
      r.inputs["d"] = d;
      json rows = json::array();
      bool bounded = true;
      for (unsigned e = 1; e <= d; ++e) {
        auto g = encompass::check_maximal_growth(f, e, limits);
        rows.push_back({{"d", e}, {"dim", g.lhs}, {"binom", big(g.rhs)}, {"equal", g.equal}});
        bounded = bounded && Int(static_cast<unsigned long>(g.lhs)) <= g.rhs;
      }
      r.outputs = {{"table", rows}, {"inequality_holds", bounded}};
      r.provenance = {"dim Ap(f^d) <= binom(l+d-1, d)"};
      if (!bounded) r.code = Exit::violated;
    } else if (c_ext->parsed()) {
      Poly f = with_poly();
      std::optional<std::vector<Poly>> sigmas;
      if (!sigma_text.empty()) {
        sigmas.emplace();
        for (const auto& s : split(sigma_text, ';')) sigmas->push_back(poly::parse(s, poly::dual_varset(f.vars())));
        r.inputs["sigma"] = string_list(*sigmas);
      }
      auto e = encompass::encompassing_extension(f, sigmas, limits);
      r.outputs = {{"g", poly::to_string(e.g)},
                   {"G", poly::to_string(e.G)},
                   {"sigma", string_list(e.sigma_list)},
                   {"y", e.y_names},
                   {"x0", e.x0},
                   {"g_encompassing", encompass::is_encompassing(e.g, limits)}};
      r.provenance = {"encompassing extension by Taylor series"};
    } else if (c_taut->parsed()) {
      Poly f = with_poly();
      Poly F = poly::pow(f, power, limits);
      r.inputs["var"] = var;
      r.inputs["power"] = power;
      r.inputs["twisted"] = !untwisted;
      if (degree_opt) r.inputs["bound"] = *degree_opt;
      auto rep = apolar::verify_tautological_apolarity(F, var, degree_opt, !untwisted, limits);
      json failing = json::array();
      for (const auto& c : rep.checks) {
        if (!c.annihilates) failing.push_back(poly::to_string(c.homogenized));
      }
      r.outputs = {{"checked", rep.checks.size()}, {"pass", rep.pass()}, {"failing", failing}};
      r.provenance = {"tautological apolar scheme of the dehomogenization"};
      if (!rep.pass() && !untwisted) r.code = Exit::violated;
    } else if (c_main->parsed()) {
      Poly f = with_poly();
      r.inputs["var"] = var;
      r.inputs["d"] = d;
      auto m = encompass::verify_main_theorem(f, var, d, limits);
      r.outputs = {{"concise", m.concise},
                   {"encompassing", m.encompassing},
                   {"middle", m.middle},
                   {"twisted_rank", m.twisted_rank},
                   {"twisted_rank_at_d", m.twisted_rank_at_d},
                   {"untwisted_rank", m.untwisted_rank},
                   {"expected", big(m.expected)},
                   {"assumptions_hold", m.assumptions_hold()},
                   {"holds", m.holds()},
                   {"out_of_scope", out_of_scope()}};
      r.provenance = {"catalecticant of the twisted power equals binom(n+d, d)"};
      if (m.assumptions_hold() && !m.holds()) r.code = Exit::violated;
    } else if (c_tensor->parsed()) {
      Tensor3 t;
      if (m_cw->parsed()) {
        r.inputs["n"] = n_size;
        t = tensor::cw(n_size);
        r.provenance = {"Coppersmith-Winograd tensor"};
      } else if (m_group->parsed()) {
        tensor::AbelianGroup g;
        for (long o : parse_ints(orders_text)) {
          if (o < 1) throw DomainError("group orders must be positive");
          g.orders.push_back(static_cast<unsigned>(o));
        }
        r.inputs["orders"] = g.orders;
        t = tensor::group_tensor(g);
        r.provenance = {"group tensor T_G"};
      } else if (m_alg->parsed()) {
        Poly f = with_poly();
        auto s = apolar::structure_tensor_of_apolar(f, limits);
        t = s.tensor;
        r.provenance = {"structure tensor of the apolar algebra"};
      } else if (m_atk->parsed()) {
        auto j = load_json(slices_text);
        tensor::PartiallySymmetricTensor ps;
        try {
          ps.n = j.at("n").get<std::size_t>();
          for (const auto& sl : j.at("slices")) {
            std::vector<exact::RatVector> rows;
            for (const auto& row : sl) {
              exact::RatVector rv;
              for (const auto& x : row) rv.push_back(x.is_string() ? exact::parse_rat(x.get<std::string>()) : Rat(x.get<long>()));
              rows.push_back(rv);
            }
            ps.slices.push_back(exact::QMatrix::from_rows(rows));
          }
        } catch (const json::exception& e) {
          throw ParseError(std::string("bad slices JSON: ") + e.what());
        }
        r.inputs["slices"] = j;
        r.inputs["k"] = k_size;
        t = tensor::algebra_A_Tk(ps, k_size);
        r.provenance = {"algebra A_{T,k}"};
      } else if (m_ts->parsed()) {
        Tensor3 src = load_tensor(tensor_spec, limits);
        r.inputs["tensor"] = tensor_spec;
        auto ps = tensor::symmetrize_TS(src);
        json slices = json::array();
        for (const auto& m : ps.slices) {
          json rows = json::array();
          for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_json(m(i, j)));
            rows.push_back(row);
          }
          slices.push_back(rows);
        }
        r.outputs = {{"n", ps.n}, {"slices", slices}};
        r.provenance = {"partially symmetric tensor T_S"};
      } else if (m_onegen->parsed()) {
        Tensor3 src = load_tensor(tensor_spec, limits);
        r.inputs["tensor"] = tensor_spec;
        r.inputs["k"] = k_size;
        t = tensor::one_generic_extension(src, k_size);
        r.provenance = {"one-generic extension T'"};
      } else if (c_kron->parsed()) {
        Tensor3 a = load_tensor(tensor_spec, limits);
        r.inputs["tensor"] = tensor_spec;
        if (!tensor_b.empty()) {
          r.inputs["with"] = tensor_b;
          t = tensor::kronecker_product(a, load_tensor(tensor_b, limits), limits);
        } else {
          r.inputs["power"] = power;
          t = tensor::kronecker_power(a, power, limits);
        }
        r.provenance = {"Kronecker product"};
      }
      if (!m_ts->parsed()) r.outputs["tensor"] = tensor::to_json(t);
    } else if (c_sweet->parsed()) {
      auto with_tensor = [&]() {
        Tensor3 t = load_tensor(tensor_spec, limits);
        r.inputs["tensor"] = tensor_spec;
        r.inputs["dims"] = t.dims();
        return t;
      };
      auto with_blocking = [&](const Tensor3& t) {
        auto b = load_blocking(blocking_spec, t);
        r.inputs["blocking"] = sweet::to_json(b);
        return b;
      };
      auto with_dist = [&](const Tensor3& t, const sweet::Blocking& b) {
        auto p = load_distribution(dist_spec, t, b);
        r.inputs["distribution"] = sweet::to_json(p);
        return p;
      };
      if (s_support->parsed()) {
        auto t = with_tensor();
        auto b = with_blocking(t);
        json blocks = json::array();
        for (const auto& blk : sweet::support_blocks(t, b)) {
          blocks.push_back({{"labels", sweet::to_json(sweet::BlockDistribution{{blk.labels}, {Rat(1)}})["support"][0]},
                            {"format", blk.format},
                            {"nnz", blk.tensor.nnz()}});
        }
        r.outputs = {{"blocks", blocks}, {"count", blocks.size()}};
        r.provenance = {"blocks in the support of a blocked tensor"};
      } else if (s_tight->parsed()) {
        auto t = with_tensor();
        auto b = with_blocking(t);
        r.outputs["tight"] = sweet::is_tight(t, b);
        r.provenance = {"tight blockings"};
      } else if (s_marg->parsed()) {
        sweet::BlockDistribution p;
        if (dist_spec == "uniform") {
          if (tensor_spec.empty()) throw ParseError("a uniform distribution needs --tensor");
          auto t = with_tensor();
          p = with_dist(t, with_blocking(t));
        } else {
          p = load_distribution(dist_spec, Tensor3(), sweet::Blocking{});
          r.inputs["distribution"] = sweet::to_json(p);
        }
        auto m = sweet::marginals(p);
        json axes = json::array();
        for (const auto& mi : m) axes.push_back(sweet::to_json(mi));
        r.outputs = {{"marginals", axes},
                     {"equal", sweet::marginals_equal(m)},
                     {"uniqueness", sweet::to_string(sweet::marginal_uniqueness(p))}};
        r.provenance = {"marginals of a block distribution"};
      } else if (s_extract->parsed()) {
        auto t = with_tensor();
        auto b = with_blocking(t);
        auto p = with_dist(t, b);
        r.inputs["n"] = big_n;
        auto sp = sweet::sp_extract(t, b, p, big_n, limits, !no_tight);
        auto check = sweet::check_sweet_piece(sp);
        r.outputs = {{"tensor", tensor::to_json(sp.tensor)},
                     {"kept", sp.kept},
                     {"p_T", sp.p_T},
                     {"p_axes", sp.p_axes},
                     {"uniqueness", sweet::to_string(sweet::marginal_uniqueness(p))},
                     {"check",
                      {{"blocks", check.blocks},
                       {"uniform_marginals_equal", check.uniform_marginals_equal},
                       {"p_equal", check.p_equal},
                       {"block_formats_equal", check.block_formats_equal},
                       {"block_multisets_equal", check.block_multisets_equal}}}};
        r.provenance = {"sweet piece as the marginal-matching projection of a Kronecker power"};
      } else if (s_chimney->parsed()) {
        auto t = with_tensor();
        auto b = with_blocking(t);
        auto p = with_dist(t, b);
        auto fixed = parse_pair(fixed_text);
        r.inputs["n"] = big_n;
        r.inputs["fixed"] = {fixed.first + 1, fixed.second + 1};
        auto ch = sweet::chimney(t, b, p, big_n, fixed, limits);
        int free_axis = 3 - fixed.first - fixed.second;
        r.outputs = {{"dims", ch.dims()},
                     {"nnz", ch.nnz()},
                     {"free_axis", free_axis + 1},
                     {"zero_layers", sweet::zero_layers(ch, free_axis)}};
        if (ch.nnz() <= 10000) r.outputs["tensor"] = tensor::to_json(ch);
        r.provenance = {"chimney of a Kronecker power"};
      } else if (s_degen->parsed()) {
        auto t = with_tensor();
        auto b = with_blocking(t);
        auto w = weights_spec == "labels" ? sweet::label_weights(b) : sweet::weights_from_json(load_json(weights_spec));
        r.inputs["weights"] = w;
        auto out_t = sweet::toric_degenerate(t, b, w);
        r.outputs = {{"tensor", tensor::to_json(out_t)}, {"equals_cw", out_t == tensor::cw(t.dim(0))}};
        r.provenance = {"toric degeneration of a blocked tensor"};
      } else if (s_zero->parsed()) {
        auto t = with_tensor();
        if (axis < 1 || axis > 3) throw DomainError("axis must be in 1..3");
        r.inputs["axis"] = axis;
        r.outputs["zero_layers"] = sweet::zero_layers(t, axis - 1);
        r.provenance = {"zero layers for the substitution method"};
      } else if (s_bound->parsed()) {
        if (!formula_text.empty()) {
          auto parts = split(formula_text, ',');
          if (parts.size() != 4) throw ParseError("expected --formula n,N,p,q");
          auto nn = parse_ints(parts[0] + "," + parts[1]);
          if (nn[0] < 1 || nn[1] < 1) throw DomainError("n and N must be positive");
          Rat pp = exact::parse_rat(parts[2]);
          Rat qq = exact::parse_rat(parts[3]);
          r.inputs["formula"] = {{"n", nn[0]}, {"N", nn[1]}, {"p", rat_json(pp)}, {"q", rat_json(qq)}};
          auto un = static_cast<unsigned>(nn[0]);
          auto uN = static_cast<unsigned>(nn[1]);
          r.outputs["formula_bound"] = big(sweet::formula_sweet_rank(un, uN, pp, qq));
          r.outputs["formula_term"] = big(sweet::formula_sweet_term(un, uN, pp, qq));
          r.provenance = {"sweet-piece rank bound for CW_n"};
        } else {
          if (ambient_dim_text.empty() || zeros_text.empty()) throw ParseError("need --ambient-dim and --zeros, or --formula");
          sweet::Ambient amb = ambient_text == "group" ? sweet::Ambient::group_power
                               : ambient_text == "z2"  ? sweet::Ambient::z2_power
                               : ambient_text == "other"
                                   ? sweet::Ambient::other
                                   : throw ParseError("--ambient must be group, z2 or other");
          Int dim_i(ambient_dim_text);
          Int zeros_i(zeros_text);
          r.inputs = {{"ambient_dim", big(dim_i)},
                      {"zeros", big(zeros_i)},
                      {"ambient", sweet::to_string(amb)},
                      {"override", override_minimal}};
          r.outputs["bound"] = big(sweet::substitution_bound(dim_i, zeros_i, amb, override_minimal));
          r.provenance = {"substitution method on a minimal-rank ambient tensor"};
        }
        r.outputs["out_of_scope"] = out_of_scope();
      } else if (s_pratt->parsed()) {
        r.inputs["k"] = k_pratt;
        auto f = sweet::formula_pratt(k_pratt);
        auto closed = sweet::even_symdiff_closed(k_pratt);
        bool agree = f == closed;
        r.outputs["bound"] = big(f);
        r.outputs["closed_form"] = big(closed);
        if (k_pratt <= 5) {
          auto e = sweet::even_symdiff_count(k_pratt);
          r.outputs["enumeration"] = big(e);
          agree = agree && e == f;
        }
        if (k_pratt <= 3) {
          using sweet::Label;
          auto p = sweet::uniform_distribution({{Label{0}, Label{0}, Label{0}}, {Label{0}, Label{1}, Label{-1}},
                                                {Label{1}, Label{0}, Label{-1}}});
          auto ch = sweet::chimney(tensor::group_tensor({{2}}), sweet::grading_blocking({0, 1}), p, 3 * k_pratt, {0, 1},
                                   limits);
          Int ambient;
          mpz_ui_pow_ui(ambient.get_mpz_t(), 2, 3 * k_pratt);
          auto zl = sweet::zero_layers(ch, 2);
          Int via = sweet::substitution_bound(ambient, static_cast<unsigned long>(zl), sweet::Ambient::z2_power);
          r.outputs["chimney_zero_layers"] = zl;
          r.outputs["chimney_bound"] = big(via);
          agree = agree && via == f;
        }
        r.outputs["agree"] = agree;
        r.provenance = {"rank bound of the 3-way partition tensor"};
        if (!agree) r.code = Exit::violated;
      } else if (s_omega->parsed()) {
        Int a(a_text);
        Rat rr = exact::parse_rat(r_text);
        Rat pp = exact::parse_rat(p_text);
        r.inputs = {{"a", big(a)}, {"r", rat_json(rr)}, {"p", rat_json(pp)}};
        r.outputs["omega_bound"] = sweet::omega_bound(a, rr, pp);
        r.outputs["out_of_scope"] = out_of_scope();
        r.provenance = {"omega <= log_a(r/p_T)"};
      } else if (s_vero->parsed()) {
        std::vector<Int> dims;
        if (binom_n) {
          for (long i = 0; i <= static_cast<long>(*binom_n); ++i) dims.push_back(exact::binomial(*binom_n, i));
        } else {
          for (long x : parse_ints(dims_text)) dims.push_back(Int(x));
        }
        if (dims.empty()) throw ParseError("need --dims or --binom");
        json in_dims = json::array();
        for (const auto& x : dims) in_dims.push_back(big(x));
        r.inputs = {{"dims", in_dims}, {"k", k_vero}};
        json outd = json::array();
        for (const auto& x : sweet::veronese_dims(dims, k_vero)) outd.push_back(big(x));
        r.outputs["dims"] = outd;
        r.provenance = {"Veronese subalgebra dimensions"};
      }
    } else if (c_suite->parsed()) {
      json entries = json::array();
      std::size_t passed = 0;
      std::size_t failed = 0;
      std::size_t info = 0;
      if (!only.empty()) r.inputs["only"] = only;
      for (const auto& e : regression_ledger()) {
        if (!only.empty() && e.id.rfind(only, 0) != 0) continue;
        json row = {{"id", e.id}, {"anchor", e.anchor}};
        try {
          auto o = e.run(limits);
          row["observed"] = o.observed;
          row["expected"] = o.expected;
          row["status"] = e.informational ? "info" : (o.pass ? "pass" : "fail");
        } catch (const std::exception& ex) {
          row["status"] = e.informational ? "info" : "fail";
          row["error"] = ex.what();
        }
        const auto& st = row["status"];
        if (st == "pass") ++passed;
        else if (st == "fail") ++failed;
        else ++info;
        r.provenance.push_back(e.anchor);
        entries.push_back(std::move(row));
      }
      r.outputs = {{"entries", entries},
                   {"passed", passed},
                   {"failed", failed},
                   {"informational", info},
                   {"out_of_scope", out_of_scope()}};
      if (failed) r.code = Exit::violated;
    }
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << "\n";
    out << json{{"command", command}, {"error", {{"kind", "guard"}, {"message", e.what()}}}, {"seed", seed}}.dump(2)
        << "\n";
    return Exit::guard;
  } catch (const std::bad_alloc&) {
    err << "guard: out of memory\n";
    return Exit::guard;
  } catch (const Error& e) {
    std::string kind = dynamic_cast<const ParseError*>(&e) ? "parse" : "domain";
    err << kind << ": " << e.what() << "\n";
    out << json{{"command", command}, {"error", {{"kind", kind}, {"message", e.what()}}}, {"seed", seed}}.dump(2)
        << "\n";
    return Exit::usage;
  } catch (const std::invalid_argument& e) {
    err << "parse: " << e.what() << "\n";
    return Exit::usage;
  }

  if (table) {
    print_table(r.outputs, "", out);
  } else {
    json report = {{"command", command},
                   {"inputs", r.inputs},
                   {"outputs", r.outputs},
                   {"provenance", r.provenance},
                   {"seed", seed}};
    out << report.dump(2) << "\n";
  }
  return r.code;
}

}  // namespace apolarium::cli
