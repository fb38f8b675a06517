#include "cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rdlie/deform_extend.hpp"
#include "rdlie/integrate.hpp"

namespace rdlie::cli {

namespace {

using json = nlohmann::json;
using Names = std::vector<std::string>;

std::string combo(std::span<const Rational> v, Names const& names) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Rational c = v[i];
    bool negative = c.sign() < 0;
    if (negative) c = -c;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    if (c != Rational(1)) out += c.to_string() + " ";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

std::string tuple(std::vector<std::size_t> const& idx, std::vector<Names const*> const& names) {
  std::string out = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? ", " : "") + (*names[k])[idx[k]];
  return out + ")";
}

json json_combo(std::span<const Rational> v, Names const& names) {
  json out = json::object();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) out[names[i]] = v[i].to_string();
  }
  return out;
}

// Nonzero values of an alternating map as "f(x,y) = …" fragments and cochain-file entries.
std::string format_map(AlternatingMap const& f, Names const& domain, Names const& target, std::string const& label) {
  std::string out;
  for (auto m : f.tuples()) {
    auto v = f.values(m);
    if (is_zero(v)) continue;
    std::string args;
    for (auto i : wedge_indices(m)) args += (args.empty() ? "" : ",") + domain[i];
    std::string lhs = label.empty() ? "[" + args + "]" : label + "(" + args + ")";
    out += (out.empty() ? "" : "; ") + lhs + " = " + combo(v, target);
  }
  return out.empty() ? "0" : out;
}

json json_map(AlternatingMap const& f, Names const& domain, Names const& target) {
  json out = json::array();
  for (auto m : f.tuples()) {
    auto v = f.values(m);
    if (is_zero(v)) continue;
    json inputs = json::array();
    for (auto i : wedge_indices(m)) inputs.push_back(domain[i]);
    out.push_back({{"inputs", inputs}, {"output", json_combo(v, target)}});
  }
  return out;
}

std::string format_linear(RationalMatrix const& m, Names const& domain, Names const& target,
                          std::string const& label) {
  return format_map(AlternatingMap::linear(m), domain, target, label);
}

json json_linear(RationalMatrix const& m, Names const& domain, Names const& target) {
  return json_map(AlternatingMap::linear(m), domain, target);
}

std::string format_vector(std::span<const Rational> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string();
  return out + ")";
}

json json_vector(std::span<const Rational> v) {
  json out = json::array();
  for (auto const& x : v) out.push_back(x.to_string());
  return out;
}

// One validation line per (object, axiom).
struct Checker {
  std::ostringstream text;
  json checks = json::array();
  std::size_t failed = 0;

  void record(std::string const& object, std::string const& axiom, std::vector<AxiomFailure> const& failures,
              std::function<std::string(AxiomFailure const&)> const& where, Names const& residual_names) {
    json entry{{"object", object}, {"axiom", axiom}, {"pass", failures.empty()}};
    json res = json::array();
    text << object << ": " << axiom << ": " << (failures.empty() ? "pass" : "FAIL") << "\n";
    for (auto const& f : failures) {
      std::string at = where(f);
      text << "  residual " << combo(f.residual, residual_names) << " at " << at << "\n";
      res.push_back({{"at", at}, {"residual", json_combo(f.residual, residual_names)}});
    }
    if (!failures.empty()) {
      entry["residuals"] = res;
      ++failed;
    }
    checks.push_back(entry);
  }

  void skip(std::string const& object, std::string const& axiom, std::string const& reason) {
    text << object << ": " << axiom << ": FAIL (" << reason << ")\n";
    checks.push_back({{"object", object}, {"axiom", axiom}, {"pass", false}, {"reason", reason}});
    ++failed;
  }
};

std::vector<AxiomFailure> select(std::vector<AxiomFailure> const& all, std::string const& axiom) {
  std::vector<AxiomFailure> out;
  for (auto const& f : all) {
    if (f.axiom == axiom) out.push_back(f);
  }
  return out;
}

std::function<std::string(AxiomFailure const&)> at(std::vector<Names const*> names) {
  return [names](AxiomFailure const& f) {
    std::vector<std::size_t> idx(f.indices.begin(), f.indices.begin() + static_cast<std::ptrdiff_t>(names.size()));
    return tuple(idx, names);
  };
}

bool structure_valid(ProblemFile const& p, std::string const& op) {
  auto s = p.relative(op);
  return jacobi_failures(s.g().bracket_map()).empty() && jacobi_failures(s.h().bracket_map()).empty() &&
         action_failures(s.g(), s.h(), s.triple().rho()).empty() && difference_op_failures(s.triple(), s.d()).empty();
}

bool representation_valid(ProblemFile const& p, std::string const& rep) {
  auto const& r = p.representations.at(rep);
  auto base = p.difference_algebra(r.base);
  return structure_valid(p, r.base) && representation_failures(base.g(), r.varrho).empty() &&
         diff_representation_failures(base, r.varrho, r.k).empty();
}

template <class Map>
std::string pick(Map const& m, std::string const& requested, std::string const& kind,
                 std::function<bool(std::string const&)> const& eligible = {}) {
  if (!requested.empty()) {
    if (!m.count(requested)) throw InputError("unknown " + kind + " \"" + requested + "\"");
    if (eligible && !eligible(requested)) throw InputError(kind + " \"" + requested + "\" cannot be used here");
    return requested;
  }
  std::vector<std::string> candidates;
  for (auto const& [name, v] : m) {
    if (!eligible || eligible(name)) candidates.push_back(name);
  }
  if (candidates.size() == 1) return candidates.front();
  if (candidates.empty()) throw InputError("the file defines no suitable " + kind);
  std::string list;
  for (auto const& c : candidates) list += (list.empty() ? "" : ", ") + c;
  throw InputError("several candidates (" + list + "); choose one with --on");
}

std::string cochain_text(ProblemFile const& p, std::string const& name) {
  auto const& c = p.cochains.at(name);
  auto const& d = p.cochain_domain(name);
  auto const& t = p.cochain_target(name);
  std::string f = format_map(c.f, d, t, "f");
  if (c.degree == 1) return f;
  return "f: " + f + " | theta: " + format_map(c.theta, d, t, "theta");
}

}  // namespace

CommandResult cmd_validate(ProblemFile const& p) {
  Checker c;
  for (auto const& [name, a] : p.algebras) {
    c.record("algebra " + name, "Jacobi identity", jacobi_failures(a.bracket), at({&a.basis, &a.basis, &a.basis}),
             a.basis);
  }
  for (auto const& [name, a] : p.actions) {
    auto const& g = p.algebras.at(a.g).basis;
    auto const& h = p.algebras.at(a.h).basis;
    auto fails = action_failures(p.algebra(a.g), p.algebra(a.h), a.rho);
    c.record("action " + name, "action by derivations", select(fails, "derivation"), at({&g, &h, &h}), h);
    c.record("action " + name, "action is a homomorphism", select(fails, "homomorphism"), at({&g, &g, &h}), h);
  }
  for (auto const& [name, o] : p.operators) {
    auto const& g = p.operator_domain(name);
    auto const& h = p.operator_target(name);
    c.record("operator " + name, "difference operator", difference_op_failures(p.action(o.action), o.map),
             at({&g, &g}), h);
  }
  for (auto const& [name, r] : p.representations) {
    auto base = p.difference_algebra(r.base);
    auto const& g = p.operator_domain(r.base);
    auto fails = diff_representation_failures(base, r.varrho, r.k);
    c.record("representation " + name, "representation", select(fails, "representation"), at({&g, &g, &r.space}),
             r.space);
    c.record("representation " + name, "compatibility with K", select(fails, "compatibility with K"),
             at({&g, &r.space}), r.space);
  }
  for (auto const& [name, cs] : p.cochains) {
    if (!cs.claimed_cocycle) continue;
    std::string object = "cocycle " + name;
    bool base_ok = cs.theory == Theory::Regular ? structure_valid(p, cs.over) : representation_valid(p, cs.over);
    if (!base_ok) {
      c.skip(object, "closed", "its base structure is invalid");
      continue;
    }
    auto const& d = p.cochain_domain(name);
    auto const& t = p.cochain_target(name);
    AlternatingMap df, dtheta;
    if (cs.theory == Theory::Regular) {
      auto r = regular_delta(p.difference_algebra(cs.over), p.regular_cochain(name));
      df = r.f;
      dtheta = r.theta;
    } else {
      auto r = coeff_delta(p.representation(cs.over), p.coeff_cochain(name));
      df = r.f;
      dtheta = r.theta;
    }
    std::vector<AxiomFailure> fails;
    for (auto const& [map, label] : {std::pair{&df, "f"}, std::pair{&dtheta, "theta"}}) {
      for (auto m : map->tuples()) {
        auto v = map->values(m);
        if (is_zero(v)) continue;
        auto idx = wedge_indices(m);
        fails.push_back({label, idx, Vector(v.begin(), v.end())});
      }
    }
    c.record(object, "closed", fails, [&d](AxiomFailure const& f) {
      std::string s = "delta " + f.axiom + "(";
      for (std::size_t k = 0; k < f.indices.size(); ++k) s += (k ? "," : "") + d[f.indices[k]];
      return s + ")";
    }, t);
  }
  for (auto const& [name, h] : p.homomorphisms) {
    auto s = p.relative(h.source);
    auto t = p.relative(h.target);
    auto const& sg = p.operator_domain(h.source);
    auto const& sh = p.operator_target(h.source);
    auto const& tg = p.operator_domain(h.target);
    auto const& th = p.operator_target(h.target);
    auto fails = homomorphism_failures(s, t, h.psi_g, h.psi_h);
    std::string object = "homomorphism " + name;
    c.record(object, "g-homomorphism", select(fails, "g-homomorphism"), at({&sg, &sg}), tg);
    c.record(object, "h-homomorphism", select(fails, "h-homomorphism"), at({&sh, &sh}), th);
    c.record(object, "operator intertwining", select(fails, "operator intertwining"), at({&sg}), th);
    c.record(object, "action intertwining", select(fails, "action intertwining"), at({&sg, &sh}), th);
  }

  CommandResult r;
  std::size_t total = c.checks.size();
  r.text = c.text.str();
  if (c.failed == 0) r.text += "all " + std::to_string(total) + " checks passed\n";
  else r.text += std::to_string(c.failed) + " of " + std::to_string(total) + " checks failed\n";
  r.exit_code = c.failed == 0 ? kSuccess : kMathFailure;
  r.report["checks"] = c.checks;
  r.report["failed"] = c.failed;
  return r;
}

namespace {

void require_structure(ProblemFile const& p, std::string const& op) {
  auto s = p.relative(op);
  LieAlgebra::validate(s.g().names(), s.g().bracket_map());
  LieAlgebra::validate(s.h().names(), s.h().bracket_map());
  LieActTriple::validate(s.g(), s.h(), s.triple().rho());
  validate_rel_diff_op(s.triple(), s.d());
}

void require_representation(ProblemFile const& p, std::string const& rep) {
  require_structure(p, p.representations.at(rep).base);
  auto r = p.representation(rep);
  DiffRepresentation::validate(r.base(), r.varrho(), r.k());
}

}  // namespace

CommandResult cmd_cohomology(ProblemFile const& p, CohomologyOptions const& o) {
  if (o.max_degree < 1) throw InputError("--max-degree must be at least 1");
  std::unique_ptr<CochainComplex> complex;
  std::optional<RelDiffStructure> relative;
  std::string on;
  std::function<std::string(std::size_t, Vector const&)> show = [](std::size_t, Vector const& v) {
    return "coordinates " + format_vector(v);
  };
  switch (o.theory) {
    case Theory::LieAct: {
      on = pick(p.actions, o.on, "action");
      auto t = p.action(on);
      LieAlgebra::validate(t.g().names(), t.g().bracket_map());
      LieAlgebra::validate(t.h().names(), t.h().bracket_map());
      complex = lieact_complex(LieActTriple::validate(t.g(), t.h(), t.rho()));
      break;
    }
    case Theory::Operator:
    case Theory::RelDiff: {
      on = pick(p.operators, o.on, "operator");
      require_structure(p, on);
      relative = p.relative(on);
      complex = o.theory == Theory::Operator ? operator_complex(*relative) : reldiff_complex(*relative);
      break;
    }
    case Theory::Regular: {
      on = pick(p.operators, o.on, "operator", [&p](std::string const& n) { return p.is_difference_operator(n); });
      require_structure(p, on);
      auto a = p.difference_algebra(on);
      relative = a.as_relative();
      complex = regular_complex(a);
      Names const& names = p.operator_domain(on);
      show = [a, names](std::size_t n, Vector const& v) {
        auto c = RegularCochain::from_coordinates(a.dim(), n, v);
        std::string s = format_map(c.f, names, names, "f");
        if (n >= 2) s += " | " + format_map(c.theta, names, names, "theta");
        return s;
      };
      break;
    }
    case Theory::Coeff: {
      on = pick(p.representations, o.on, "representation");
      require_representation(p, on);
      auto rep = p.representation(on);
      complex = coeff_complex(rep);
      Names const& g = p.operator_domain(p.representations.at(on).base);
      Names const& v = p.representations.at(on).space;
      show = [rep, g, v](std::size_t n, Vector const& x) {
        auto c = CoeffCochain::from_coordinates(rep.base().dim(), rep.v_dim(), n, x);
        std::string s = format_map(c.f, g, v, "f");
        if (n >= 2) s += " | " + format_map(c.theta, g, v, "theta");
        return s;
      };
      break;
    }
  }
  if (o.les && !relative) throw InputError("--les needs a relative difference structure (operator, reldiff or regular theory)");

  CommandResult r;
  std::ostringstream text, summary;
  text << "theory " << theory_name(o.theory) << " on " << on << "\n";
  json degrees = json::array();
  for (std::size_t n = 1; n <= o.max_degree; ++n) {
    auto h = cohomology_group(*complex, n);
    text << "H" << n << " = " << h.dimension << "  (cochains " << h.cochain_dim << ", rank in " << h.rank_in
         << ", rank out " << h.rank_out << ")\n";
    json reps = json::array();
    for (auto const& v : h.representatives) {
      text << "  representative: " << show(n, v) << "\n";
      reps.push_back(json_vector(v));
    }
    summary << (n > 1 ? " " : "") << "H" << n << "=" << h.dimension;
    degrees.push_back({{"degree", n},
                       {"dimension", h.dimension},
                       {"cochain_dim", h.cochain_dim},
                       {"rank_in", h.rank_in},
                       {"rank_out", h.rank_out},
                       {"representatives", reps}});
  }
  text << summary.str() << "\n";
  r.report["theory"] = theory_name(o.theory);
  r.report["on"] = on;
  r.report["degrees"] = degrees;
  if (o.les) {
    auto les = les_check(*relative, o.max_degree);
    text << "long exact sequence through degree " << o.max_degree << ":\n";
    json nodes = json::array();
    for (auto const& node : les.nodes) {
      text << "  " << node.label << ": dim " << node.dimension << ", image in " << node.rank_incoming
           << ", kernel out " << node.kernel_outgoing << ", " << (node.exact ? "exact" : "NOT exact") << "\n";
      nodes.push_back({{"label", node.label},
                       {"dimension", node.dimension},
                       {"rank_incoming", node.rank_incoming},
                       {"kernel_outgoing", node.kernel_outgoing},
                       {"exact", node.exact}});
    }
    text << "exact at every node: " << (les.exact() ? "yes" : "no") << "\n";
    r.report["les"] = {{"nodes", nodes}, {"exact", les.exact()}};
    if (!les.exact()) r.exit_code = kMathFailure;
  }
  r.text = text.str();
  return r;
}

CommandResult cmd_deform(ProblemFile const& p, DeformOptions const& o) {
  std::string on = pick(p.operators, o.on, "operator", [&p](std::string const& n) { return p.is_difference_operator(n); });
  require_structure(p, on);
  auto a = DifferenceLieAlgebra::validate(p.algebra(p.actions.at(p.operators.at(on).action).g), p.operators.at(on).map);
  Names const& names = p.operator_domain(on);
  CommandResult r;
  std::ostringstream text;
  text << "deformations of " << on << "\n";

  auto datum_of = [&](std::string const& name) {
    auto const& c = p.cochains.at(name);
    if (c.theory != Theory::Regular || c.over != on || c.degree != 2) {
      throw InputError("\"" + name + "\" is not a regular 2-cochain over " + on);
    }
    return DeformationDatum::from_cochain(p.regular_cochain(name));
  };

  std::vector<std::string> data = o.data;
  if (data.empty()) {
    for (auto const& [name, c] : p.cochains) {
      if (c.theory == Theory::Regular && c.over == on && c.degree == 2) data.push_back(name);
    }
  }
  json checks = json::array();
  for (auto const& name : data) {
    if (!p.cochains.count(name)) throw InputError("unknown cochain \"" + name + "\"");
    auto d = datum_of(name);
    bool cocycle = is_deformation_cocycle(a, d);
    text << "datum " << name << " [" << cochain_text(p, name) << "]: " << (cocycle ? "cocycle" : "not a cocycle")
         << " (dual-number deformation " << (cocycle ? "valid" : "invalid") << ")\n";
    checks.push_back({{"name", name}, {"cocycle", cocycle}});
    if (!cocycle && p.cochains.at(name).claimed_cocycle) r.exit_code = kMathFailure;
  }
  r.report["data"] = checks;

  if (!o.equivalent.empty()) {
    if (o.equivalent.size() != 2) throw InputError("--equivalent takes exactly two names");
    for (auto const& n : o.equivalent) {
      if (!p.cochains.count(n)) throw InputError("unknown cochain \"" + n + "\"");
    }
    auto d1 = datum_of(o.equivalent[0]);
    auto d2 = datum_of(o.equivalent[1]);
    std::string pair = o.equivalent[0] + " ~ " + o.equivalent[1];
    try {
      RationalMatrix n = deformation_equivalent(a, d1, d2);
      bool witnessed = is_equivalence_witness(a, d1, d2, n);
      text << pair << ": equivalent, N = " << format_linear(n, names, names, "N") << " (witness "
           << (witnessed ? "verified" : "REJECTED") << ")\n";
      r.report["equivalence"] = {{"equivalent", true}, {"N", json_linear(n, names, names)}, {"witness_verified", witnessed}};
      if (!witnessed) r.exit_code = kMathFailure;
    } catch (NotEquivalent const& e) {
      text << pair << ": not equivalent (rank " << e.rank_coefficients() << " < " << e.rank_augmented() << ")\n";
      r.report["equivalence"] = {{"equivalent", false},
                                 {"rank_coefficients", e.rank_coefficients()},
                                 {"rank_augmented", e.rank_augmented()}};
    }
  }

  auto cls = classify_deformations(a, o.max_representatives);
  text << "H2 = " << cls.dimension << (cls.dimension == 0 ? ": rigid" : "") << "\n";
  json reps = json::array();
  for (auto const& d : cls.representatives) {
    text << "  class: omega_hat: " << format_map(d.omega_hat, names, names, "w") << " | D_hat: "
         << format_linear(d.d_hat, names, names, "D") << "\n";
    reps.push_back({{"omega_hat", json_map(d.omega_hat, names, names)}, {"d_hat", json_linear(d.d_hat, names, names)}});
  }
  r.report["on"] = on;
  r.report["h2"] = cls.dimension;
  r.report["rigid"] = cls.dimension == 0;
  r.report["representatives"] = reps;
  r.text = text.str();
  return r;
}

namespace {

std::string cocycle_text(ExtensionCocycle const& c, Names const& g, Names const& v) {
  std::string w = c.omega.is_zero() ? "0" : format_map(c.omega, g, v, "omega");
  std::string x = c.chi.is_zero() ? "0" : format_linear(c.chi, g, v, "chi");
  return "(" + w + "," + (c.omega.is_zero() && c.chi.is_zero() ? "" : " ") + x + ")";
}

json cocycle_json(ExtensionCocycle const& c, Names const& g, Names const& v) {
  return {{"omega", json_map(c.omega, g, v)}, {"chi", json_linear(c.chi, g, v)}};
}

}  // namespace

CommandResult cmd_extend(ProblemFile const& p, ExtendOptions const& o) {
  auto cocycle_named = [&](std::string const& name) {
    auto it = p.cochains.find(name);
    if (it == p.cochains.end()) throw InputError("unknown cochain \"" + name + "\"");
    if (it->second.theory != Theory::Coeff || it->second.degree != 2) {
      throw InputError("\"" + name + "\" is not a coefficient 2-cochain");
    }
    return it->second;
  };
  if (o.cocycle.empty()) throw InputError("extend needs --cocycle");
  auto const& spec = cocycle_named(o.cocycle);
  require_representation(p, spec.over);
  auto rep = p.representation(spec.over);
  rep = DiffRepresentation::validate(rep.base(), rep.varrho(), rep.k());
  Names const& g = p.operator_domain(p.representations.at(spec.over).base);
  Names const& v = p.representations.at(spec.over).space;
  Names total_names = g;
  total_names.insert(total_names.end(), v.begin(), v.end());

  auto c1 = ExtensionCocycle::from_cochain(p.coeff_cochain(o.cocycle));
  CommandResult r;
  std::ostringstream text;
  AbelianExtension e1;
  try {
    e1 = extension_from_cocycle(rep, c1);
  } catch (NotCocycle const& e) {
    text << "cocycle " << o.cocycle << " is not closed: " << e.what() << "\n";
    r.text = text.str();
    r.exit_code = kMathFailure;
    r.report["closed"] = false;
    return r;
  }
  auto extracted = cocycle_from_extension(e1, e1.canonical_section());
  bool roundtrip = extracted.cocycle == c1;
  text << "extension of " << spec.over << " by " << o.cocycle << ": dimension " << e1.total().dim() << "\n";
  text << "  bracket: " << format_map(e1.total().g().bracket_map(), total_names, total_names, "") << "\n";
  text << "  operator: " << format_linear(e1.total().d(), total_names, total_names, "D") << "\n";
  text << "extracted with the canonical section: " << cocycle_text(extracted.cocycle, g, v) << "; roundtrip "
       << (roundtrip ? "exact" : "FAILED") << "\n";
  r.report["extension"] = {{"basis", total_names},
                           {"bracket", json_map(e1.total().g().bracket_map(), total_names, total_names)},
                           {"operator", json_linear(e1.total().d(), total_names, total_names)}};
  r.report["extracted"] = cocycle_json(extracted.cocycle, g, v);
  r.report["roundtrip"] = roundtrip;
  if (!roundtrip) r.exit_code = kMathFailure;

  std::string other = o.compare.empty() ? o.cocycle : o.compare;
  auto const& spec2 = cocycle_named(other);
  if (spec2.over != spec.over) throw InputError("the compared cocycles live over different representations");
  AbelianExtension e2;
  try {
    e2 = extension_from_cocycle(rep, ExtensionCocycle::from_cochain(p.coeff_cochain(other)));
  } catch (NotCocycle const& e) {
    text << "cocycle " << other << " is not closed: " << e.what() << "\n";
    r.text = text.str();
    r.exit_code = kMathFailure;
    return r;
  }
  try {
    RationalMatrix kappa = extension_isomorphic(e1, e2);
    RationalMatrix n(v.size(), g.size());
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t i = 0; i < g.size(); ++i) n(a, i) = kappa(g.size() + a, i);
    }
    std::string nt = n.is_zero() ? "0" : format_linear(n, g, v, "N");
    text << "compared with the extension of " << other << "\n";
    text << "cocycle " << cocycle_text(extracted.cocycle, g, v) << "; isomorphic: yes (N=" << nt << ")\n";
    r.report["isomorphic"] = {{"to", other}, {"result", true}, {"N", json_linear(n, g, v)}};
  } catch (NotIsomorphic const& e) {
    text << "compared with the extension of " << other << "\n";
    text << "cocycle " << cocycle_text(extracted.cocycle, g, v) << "; isomorphic: no (rank " << e.rank_coefficients()
         << " < " << e.rank_augmented() << ")\n";
    r.report["isomorphic"] = {{"to", other},
                              {"result", false},
                              {"rank_coefficients", e.rank_coefficients()},
                              {"rank_augmented", e.rank_augmented()}};
  }
  r.text = text.str();
  return r;
}

CommandResult cmd_integrate(ProblemFile const& p, IntegrateOptions const& o) {
  std::string on = pick(p.operators, o.on, "operator");
  require_structure(p, on);
  auto s = p.relative(on);
  unsigned order = default_bch_order();
  auto rdg = integrate_operator(s, order);
  std::vector<Rational> values = default_grid_values();
  if (!o.grid.empty()) {
    auto it = p.grids.find(o.grid);
    if (it == p.grids.end()) throw InputError("unknown grid \"" + o.grid + "\"");
    values = it->second;
  }
  Names const& hn = p.operator_target(on);
  CommandResult r;
  std::ostringstream text;
  text << "integration of " << on << ": class " << rdg.semidirect_group().nilpotency_class() << " (g x h), BCH order "
       << order << "\n";

  bool tangent_ok = true;
  for (std::size_t i = 0; i < s.dim_g(); ++i) {
    if (rdg.operator_tangent(unit_vector(s.dim_g(), i)) != s.d().column(i)) tangent_ok = false;
  }
  text << "tangent of the integrated operator at the identity equals D: " << (tangent_ok ? "yes" : "NO") << "\n";

  auto points = grid_points(s.dim_g(), values);
  auto pairs = grid_pairs(points);
  auto law = group_law_check(rdg, pairs);
  bool zero = true, inversion = p.is_difference_operator(on), linear = true;
  for (auto const& x : points) {
    Vector dx = rdg.operator_at(x);
    zero = zero && is_zero(dx);
    inversion = inversion && dx == Rational(-1) * x;
    linear = linear && dx == s.d().apply(x);
  }
  std::string kind = zero ? "identity element" : inversion ? "inversion" : linear ? "linear (equal to D)" : "nonlinear";
  if (law.passed()) {
    text << "group law verified on " << law.pairs_checked << " sample pairs; 𝒟 = " << kind << "\n";
  } else {
    auto const& f = *law.failure;
    text << "group law FAILS at a = " << format_vector(f.pair.a) << ", b = " << format_vector(f.pair.b)
         << ": 𝒟(ab) = " << combo(f.lhs, hn) << " but 𝒟(a)·Φ(a)𝒟(b) = " << combo(f.rhs, hn) << "\n";
  }
  json samples = json::array();
  for (std::size_t i = 0; i < points.size() && i < 8; ++i) {
    samples.push_back({{"x", json_vector(points[i])}, {"D", json_vector(rdg.operator_at(points[i]))}});
  }
  r.report["on"] = on;
  r.report["bch_order"] = order;
  r.report["tangent_equals_D"] = tangent_ok;
  r.report["group_law"] = {{"pairs", law.pairs_checked}, {"passed", law.passed()}};
  r.report["operator_kind"] = kind;
  r.report["samples"] = samples;
  if (!law.passed() || !tangent_ok) r.exit_code = kMathFailure;

  if (!o.homomorphism.empty()) {
    auto it = p.homomorphisms.find(o.homomorphism);
    if (it == p.homomorphisms.end()) throw InputError("unknown homomorphism \"" + o.homomorphism + "\"");
    auto const& h = it->second;
    if (h.source != on) throw InputError("homomorphism \"" + o.homomorphism + "\" does not start at " + on);
    require_structure(p, h.target);
    auto target = p.relative(h.target);
    auto fr = functoriality_check(s, target, h.psi_g, h.psi_h, points, grid_points(s.dim_h(), values), order);
    if (fr.passed()) {
      text << "functoriality of " << o.homomorphism << " verified on " << fr.operator_samples << " operator samples and "
           << fr.action_samples << " action samples\n";
    } else {
      text << "functoriality of " << o.homomorphism << " FAILS:\n";
      for (auto const& f : fr.failures) text << "  " << f << "\n";
      r.exit_code = kMathFailure;
    }
    r.report["functoriality"] = {{"homomorphism", o.homomorphism},
                                 {"operator_samples", fr.operator_samples},
                                 {"action_samples", fr.action_samples},
                                 {"passed", fr.passed()},
                                 {"failures", fr.failures}};
  }
  r.text = text.str();
  return r;
}

namespace {

Theory parse_theory(std::string const& t) {
  if (t == "lieact") return Theory::LieAct;
  if (t == "operator") return Theory::Operator;
  if (t == "reldiff") return Theory::RelDiff;
  if (t == "regular") return Theory::Regular;
  if (t == "coeff") return Theory::Coeff;
  throw InputError("unknown theory \"" + t + "\"");
}

void write_report(std::string const& path, json const& report) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write report to " + path);
  f << report.dump(2) << "\n";
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for relative difference Lie algebras", "rdlie"};
  app.require_subcommand(1);
  std::string file, report_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "problem file")->required();
    sub->add_option("--report", report_path, "write a JSON mirror of the report");
  };

  auto* validate = app.add_subcommand("validate", "check every structure in the file");
  add_common(validate);

  CohomologyOptions co;
  std::string theory = "reldiff";
  auto* cohomology = app.add_subcommand("cohomology", "cohomology dimensions and representatives");
  add_common(cohomology);
  cohomology->add_option("--theory", theory, "lieact, operator, reldiff, regular or coeff")
      ->check(CLI::IsMember({"lieact", "operator", "reldiff", "regular", "coeff"}));
  cohomology->add_option("--max-degree", co.max_degree, "highest degree");
  cohomology->add_flag("--les", co.les, "check the long exact sequence");
  cohomology->add_option("--on", co.on, "action, operator or representation to use");

  DeformOptions dopt;
  auto* deform = app.add_subcommand("deform", "infinitesimal deformations of a difference Lie algebra");
  add_common(deform);
  deform->add_option("--on", dopt.on, "difference operator to deform");
  deform->add_option("--datum", dopt.data, "regular 2-cochains to test");
  deform->add_option("--equivalent", dopt.equivalent, "two data to compare")->expected(2);
  deform->add_option("--max-representatives", dopt.max_representatives, "classes to list");

  ExtendOptions eopt;
  auto* extend = app.add_subcommand("extend", "abelian extensions from cocycles");
  add_common(extend);
  extend->add_option("--cocycle", eopt.cocycle, "coefficient 2-cocycle")->required();
  extend->add_option("--compare", eopt.compare, "cocycle whose extension is compared");

  IntegrateOptions iopt;
  auto* integrate = app.add_subcommand("integrate", "integrate a nilpotent relative difference Lie algebra");
  add_common(integrate);
  integrate->add_option("--on", iopt.on, "operator to integrate");
  integrate->add_option("--grid", iopt.grid, "named sample grid");
  integrate->add_option("--homomorphism", iopt.homomorphism, "homomorphism for the functoriality check");

  std::vector<char const*> argv;
  for (auto const& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e, out, err);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e, out, err);
  } catch (CLI::ParseError const& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  json report{{"command", command}, {"file", file}};
  auto finish = [&](int code, std::string const& status) {
    report["exit_code"] = code;
    report["status"] = status;
    try {
      write_report(report_path, report);
    } catch (InputError const& e) {
      err << "error: " << e.what() << "\n";
      return static_cast<int>(kInputError);
    }
    return code;
  };

  try {
    ProblemFile p = load_problem(file);
    CommandResult result;
    if (command == "validate") result = cmd_validate(p);
    else if (command == "cohomology") {
      co.theory = parse_theory(theory);
      result = cmd_cohomology(p, co);
    } else if (command == "deform") result = cmd_deform(p, dopt);
    else if (command == "extend") result = cmd_extend(p, eopt);
    else result = cmd_integrate(p, iopt);
    out << result.text;
    report.update(result.report);
    return finish(result.exit_code, result.exit_code == kSuccess ? "ok" : "failure");
  } catch (ParseError const& e) {
    err << file << ":" << e.what() << "\n";
    report["error"] = {{"kind", "parse"}, {"line", e.line()}, {"column", e.column()}, {"message", e.what()}};
    return finish(kInputError, "input-error");
  } catch (InputError const& e) {
    err << "error: " << e.what() << "\n";
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    return finish(kInputError, "input-error");
  } catch (MathError const& e) {
    err << "mathematical failure: " << e.what() << "\n";
    report["error"] = {{"kind", "math"}, {"message", e.what()}};
    return finish(kMathFailure, "failure");
  } catch (InternalInconsistency const& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    report["error"] = {{"kind", "internal"}, {"message", e.what()}};
    return finish(kMathFailure, "failure");
  }
}

}  // namespace rdlie::cli
