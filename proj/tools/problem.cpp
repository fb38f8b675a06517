#include "problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rdlie::cli {

namespace {

using json = nlohmann::json;

// Forward iterator over the text that publishes how far the parser has read.
struct TrackingIterator {
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = char const*;
  using reference = char const&;

  char const* p = nullptr;
  char const** cursor = nullptr;

  reference operator*() const { return *p; }
  TrackingIterator& operator++() {
    ++p;
    *cursor = p;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  friend bool operator==(TrackingIterator const& a, TrackingIterator const& b) { return a.p == b.p; }
  friend bool operator!=(TrackingIterator const& a, TrackingIterator const& b) { return a.p != b.p; }
};

struct LineColumn {
  std::size_t line = 0, column = 0;
};

LineColumn locate(std::string_view text, std::size_t offset) {
  LineColumn lc{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

std::string escape_token(std::string const& s) {
  std::string out;
  for (char c : s) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

bool token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-';
}

// Builds the document and records where each value and key starts.
class Builder : public nlohmann::json_sax<json> {
 public:
  Builder(std::string_view text, char const** cursor) : text_(text), cursor_(cursor) {}

  json root;
  std::map<std::string, std::size_t> value_offsets, key_offsets;
  std::string error;
  std::size_t error_offset = 0;

  bool null() override { return put(json(nullptr), false); }
  bool boolean(bool v) override { return put(json(v), false); }
  bool number_integer(number_integer_t v) override { return put(json(v), false); }
  bool number_unsigned(number_unsigned_t v) override { return put(json(v), false); }
  bool number_float(number_float_t v, string_t const&) override { return put(json(v), false); }
  bool string(string_t& v) override { return put(json(v), true); }
  bool binary(binary_t&) override { return fail("binary values are not supported", offset_now()); }

  bool start_object(std::size_t) override { return open(json::object()); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(json::array()); }
  bool end_array() override { return close(); }

  bool key(string_t& k) override {
    Frame& top = frames_.back();
    if (top.node->contains(k)) return fail("duplicate key \"" + k + "\"", string_start());
    top.key = k;
    key_offsets[top.pointer + "/" + escape_token(k)] = string_start();
    return true;
  }

  bool parse_error(std::size_t position, std::string const&, nlohmann::detail::exception const& ex) override {
    std::string what = ex.what();
    auto colon = what.find(": ", what.find("parse error"));
    error = colon == std::string::npos ? what : what.substr(colon + 2);
    error_offset = position == 0 ? 0 : position - 1;
    return false;
  }

 private:
  struct Frame {
    json* node;
    std::string pointer;
    std::string key;
  };

  std::string_view text_;
  char const** cursor_;
  std::vector<Frame> frames_;

  [[nodiscard]] std::size_t offset_now() const {
    return static_cast<std::size_t>(*cursor_ - text_.data());
  }

  [[nodiscard]] std::size_t string_start() const {
    std::size_t i = offset_now();
    if (i == 0) return 0;
    --i;   // closing quote
    while (i > 0) {
      --i;
      if (text_[i] != '"') continue;
      std::size_t slashes = 0;
      for (std::size_t j = i; j > 0 && text_[j - 1] == '\\'; --j) ++slashes;
      if (slashes % 2 == 0) return i;
    }
    return 0;
  }

  [[nodiscard]] std::size_t scalar_start() const {
    std::size_t i = offset_now();
    if (i > 0 && i <= text_.size() && !token_char(text_[i - 1])) --i;
    while (i > 0 && token_char(text_[i - 1])) --i;
    return i;
  }

  bool fail(std::string what, std::size_t offset) {
    error = std::move(what);
    error_offset = offset;
    return false;
  }

  std::string child_pointer() const {
    if (frames_.empty()) return "";
    Frame const& top = frames_.back();
    if (top.node->is_object()) return top.pointer + "/" + escape_token(top.key);
    return top.pointer + "/" + std::to_string(top.node->size());
  }

  json* insert(json v) {
    if (frames_.empty()) {
      root = std::move(v);
      return &root;
    }
    Frame& top = frames_.back();
    if (top.node->is_object()) {
      auto& slot = (*top.node)[top.key];
      slot = std::move(v);
      return &slot;
    }
    top.node->push_back(std::move(v));
    return &top.node->back();
  }

  bool put(json v, bool is_string) {
    value_offsets[child_pointer()] = is_string ? string_start() : scalar_start();
    insert(std::move(v));
    return true;
  }

  bool open(json v) {
    std::string ptr = child_pointer();
    value_offsets[ptr] = offset_now() == 0 ? 0 : offset_now() - 1;
    json* node = insert(std::move(v));
    frames_.push_back({node, ptr, {}});
    return true;
  }

  bool close() {
    frames_.pop_back();
    return true;
  }
};

// A parsed document with access to source positions by JSON pointer.
class Document {
 public:
  explicit Document(std::string_view text) : text_(text) {
    char const* cursor = text.data();
    Builder b(text, &cursor);
    TrackingIterator first{text.data(), &cursor}, last{text.data() + text.size(), &cursor};
    bool ok = json::sax_parse(first, last, &b);
    if (!ok || !b.error.empty()) raise_at(b.error_offset, b.error.empty() ? "malformed document" : b.error);
    root_ = std::move(b.root);
    values_ = std::move(b.value_offsets);
    keys_ = std::move(b.key_offsets);
  }

  [[nodiscard]] json const& root() const { return root_; }

  [[noreturn]] void fail(std::string const& pointer, std::string const& what) const {
    auto it = values_.find(pointer);
    raise_at(it == values_.end() ? 0 : it->second, what);
  }
  [[noreturn]] void fail_key(std::string const& pointer, std::string const& what) const {
    auto it = keys_.find(pointer);
    if (it == keys_.end()) fail(pointer, what);
    raise_at(it->second, what);
  }

 private:
  std::string_view text_;
  json root_;
  std::map<std::string, std::size_t> values_, keys_;

  [[noreturn]] void raise_at(std::size_t offset, std::string const& what) const {
    auto lc = locate(text_, offset);
    throw ParseError(what, lc.line, lc.column);
  }
};

struct Node {
  Document const* doc;
  json const* value;
  std::string pointer;

  [[nodiscard]] Node child(std::string const& key) const {
    return {doc, &value->at(key), pointer + "/" + escape_token(key)};
  }
  [[nodiscard]] Node item(std::size_t i) const { return {doc, &value->at(i), pointer + "/" + std::to_string(i)}; }
  [[nodiscard]] bool has(std::string const& key) const { return value->contains(key); }
  [[noreturn]] void fail(std::string const& what) const { doc->fail(pointer, what); }

  void expect_object(std::set<std::string> const& allowed, std::set<std::string> const& required) const {
    if (!value->is_object()) fail("expected an object");
    for (auto const& [k, v] : value->items()) {
      if (!allowed.count(k)) doc->fail_key(pointer + "/" + escape_token(k), "unknown key \"" + k + "\"");
    }
    for (auto const& k : required) {
      if (!value->contains(k)) fail("missing key \"" + k + "\"");
    }
  }

  [[nodiscard]] std::string text() const {
    if (!value->is_string()) fail("expected a string");
    return value->get<std::string>();
  }

  [[nodiscard]] Rational rational() const {
    if (!value->is_string()) fail("scalars must be strings of the form \"p\" or \"p/q\"");
    try {
      return Rational::parse(value->get<std::string>());
    } catch (std::invalid_argument const&) {
      fail("malformed rational \"" + value->get<std::string>() + "\"");
    }
  }

  [[nodiscard]] std::size_t count() const {
    if (!value->is_number_unsigned() && !(value->is_number_integer() && value->get<long>() >= 0)) {
      fail("expected a non-negative integer");
    }
    return value->get<std::size_t>();
  }

  [[nodiscard]] bool flag() const {
    if (!value->is_boolean()) fail("expected true or false");
    return value->get<bool>();
  }

  void expect_array() const {
    if (!value->is_array()) fail("expected an array");
  }

  template <class F>
  void for_each_member(F&& f) const {
    if (!value->is_object()) fail("expected an object");
    for (auto const& [k, v] : value->items()) f(k, child(k));
  }
};

std::size_t index_of(Node const& n, std::vector<std::string> const& basis, std::string const& what) {
  std::string name = n.text();
  auto it = std::find(basis.begin(), basis.end(), name);
  if (it == basis.end()) n.fail("\"" + name + "\" is not a basis vector of " + what);
  return static_cast<std::size_t>(it - basis.begin());
}

std::vector<std::string> read_basis(Node const& n) {
  n.expect_array();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n.value->size(); ++i) {
    Node item = n.item(i);
    std::string name = item.text();
    if (name.empty()) item.fail("basis names must be non-empty");
    if (std::find(out.begin(), out.end(), name) != out.end()) item.fail("duplicate basis name \"" + name + "\"");
    out.push_back(name);
  }
  return out;
}

Vector read_output(Node const& n, std::vector<std::string> const& target, std::string const& what) {
  Vector out = zero_vector(target.size());
  n.for_each_member([&](std::string const& k, Node const& v) {
    auto it = std::find(target.begin(), target.end(), k);
    if (it == target.end()) n.doc->fail_key(v.pointer, "\"" + k + "\" is not a basis vector of " + what);
    out[static_cast<std::size_t>(it - target.begin())] = v.rational();
  });
  return out;
}

struct RawEntry {
  std::vector<std::size_t> inputs;
  Vector output;
  Node node;
};

// Entries {inputs: [...], output: {...}}; input slot i is read against `domains[i]`.
std::vector<RawEntry> read_entries(Node const& n, std::vector<std::vector<std::string> const*> const& domains,
                                   std::vector<std::string> const& domain_names, std::vector<std::string> const& target,
                                   std::string const& target_name) {
  n.expect_array();
  std::vector<RawEntry> out;
  for (std::size_t i = 0; i < n.value->size(); ++i) {
    Node e = n.item(i);
    e.expect_object({"inputs", "output"}, {"inputs", "output"});
    Node in = e.child("inputs");
    in.expect_array();
    if (in.value->size() != domains.size()) {
      in.fail("expected " + std::to_string(domains.size()) + " inputs, found " + std::to_string(in.value->size()));
    }
    RawEntry r{{}, read_output(e.child("output"), target, target_name), e};
    for (std::size_t s = 0; s < domains.size(); ++s) r.inputs.push_back(index_of(in.item(s), *domains[s], domain_names[s]));
    out.push_back(std::move(r));
  }
  return out;
}

AlternatingMap read_alternating(Node const& n, std::size_t arity, std::vector<std::string> const& domain,
                                std::string const& domain_name, std::vector<std::string> const& target,
                                std::string const& target_name) {
  AlternatingMap f(domain.size(), arity, target.size());
  std::vector<std::vector<std::string> const*> domains(arity, &domain);
  std::vector<std::string> names(arity, domain_name);
  std::set<WedgeMask> seen;
  for (auto& e : read_entries(n, domains, names, target, target_name)) {
    WedgeMask m = 0;
    int sign = sort_to_mask(e.inputs, m);
    if (sign == 0) e.node.fail("inputs of an alternating map must be distinct");
    if (!seen.insert(m).second) e.node.fail("duplicate entry for the same inputs");
    auto vals = f.values(m);
    for (std::size_t k = 0; k < target.size(); ++k) vals[k] = Rational(sign) * e.output[k];
  }
  return f;
}

RationalMatrix read_linear(Node const& n, std::vector<std::string> const& domain, std::string const& domain_name,
                           std::vector<std::string> const& target, std::string const& target_name) {
  RationalMatrix m(target.size(), domain.size());
  std::set<std::size_t> seen;
  for (auto& e : read_entries(n, {&domain}, {domain_name}, target, target_name)) {
    if (!seen.insert(e.inputs[0]).second) e.node.fail("duplicate entry for the same input");
    m.set_column(e.inputs[0], e.output);
  }
  return m;
}

// Bilinear g × V → V as one matrix per basis vector of g.
std::vector<RationalMatrix> read_action(Node const& n, std::vector<std::string> const& g, std::string const& g_name,
                                        std::vector<std::string> const& v, std::string const& v_name) {
  std::vector<RationalMatrix> out(g.size(), RationalMatrix(v.size(), v.size()));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : read_entries(n, {&g, &v}, {g_name, v_name}, v, v_name)) {
    if (!seen.insert({e.inputs[0], e.inputs[1]}).second) e.node.fail("duplicate entry for the same inputs");
    out[e.inputs[0]].set_column(e.inputs[1], e.output);
  }
  return out;
}

template <class Map>
void require_name(Node const& n, Map const& m, std::string const& kind) {
  if (!m.count(n.text())) n.fail("unknown " + kind + " \"" + n.text() + "\"");
}

Theory read_theory(Node const& n) {
  std::string t = n.text();
  if (t == "regular") return Theory::Regular;
  if (t == "coeff") return Theory::Coeff;
  n.fail("cochain theory must be \"regular\" or \"coeff\"");
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  Document doc(text);
  Node root{&doc, &doc.root(), ""};
  root.expect_object({"algebras", "actions", "operators", "representations", "cochains", "cocycles", "homomorphisms",
                      "grids"},
                     {});
  ProblemFile p;
  auto section = [&](std::string const& name, auto&& f) {
    if (root.has(name)) root.child(name).for_each_member(f);
  };

  section("algebras", [&](std::string const& name, Node const& n) {
    n.expect_object({"basis", "brackets"}, {"basis"});
    AlgebraSpec a;
    a.basis = read_basis(n.child("basis"));
    a.bracket = n.has("brackets") ? read_alternating(n.child("brackets"), 2, a.basis, name, a.basis, name)
                                  : AlternatingMap(a.basis.size(), 2, a.basis.size());
    p.algebras[name] = std::move(a);
  });

  section("actions", [&](std::string const& name, Node const& n) {
    n.expect_object({"g", "h", "adjoint", "rho"}, {"g", "h"});
    require_name(n.child("g"), p.algebras, "algebra");
    require_name(n.child("h"), p.algebras, "algebra");
    ActionSpec a{n.child("g").text(), n.child("h").text(), false, {}};
    auto const& g = p.algebras[a.g];
    auto const& h = p.algebras[a.h];
    a.adjoint = n.has("adjoint") && n.child("adjoint").flag();
    if (a.adjoint) {
      if (n.has("rho")) n.child("rho").fail("an adjoint action takes no rho table");
      if (a.g != a.h) n.child("adjoint").fail("the adjoint action needs g and h to be the same algebra");
      for (std::size_t i = 0; i < g.basis.size(); ++i) {
        a.rho.push_back(LieAlgebra::unchecked(g.basis, g.bracket).ad_basis(i));
      }
    } else if (n.has("rho")) {
      a.rho = read_action(n.child("rho"), g.basis, a.g, h.basis, a.h);
    } else {
      a.rho.assign(g.basis.size(), RationalMatrix(h.basis.size(), h.basis.size()));
    }
    p.actions[name] = std::move(a);
  });

  section("operators", [&](std::string const& name, Node const& n) {
    n.expect_object({"action", "map"}, {"action"});
    require_name(n.child("action"), p.actions, "action");
    OperatorSpec o{n.child("action").text(), {}};
    auto const& act = p.actions[o.action];
    auto const& g = p.algebras[act.g].basis;
    auto const& h = p.algebras[act.h].basis;
    o.map = n.has("map") ? read_linear(n.child("map"), g, act.g, h, act.h) : RationalMatrix(h.size(), g.size());
    p.operators[name] = std::move(o);
  });

  section("representations", [&](std::string const& name, Node const& n) {
    n.expect_object({"base", "space", "action", "K"}, {"base", "space"});
    require_name(n.child("base"), p.operators, "operator");
    RepresentationSpec r;
    r.base = n.child("base").text();
    if (!p.is_difference_operator(r.base)) n.child("base").fail("the base must be an operator on an adjoint action");
    r.space = read_basis(n.child("space"));
    std::string const& galg = p.actions[p.operators[r.base].action].g;
    auto const& g = p.algebras[galg].basis;
    r.varrho = n.has("action") ? read_action(n.child("action"), g, galg, r.space, name)
                               : std::vector<RationalMatrix>(g.size(), RationalMatrix(r.space.size(), r.space.size()));
    r.k = n.has("K") ? read_linear(n.child("K"), r.space, name, r.space, name)
                     : RationalMatrix(r.space.size(), r.space.size());
    p.representations[name] = std::move(r);
  });

  auto cochain_section = [&](std::string const& section_name, bool cocycle) {
    section(section_name, [&](std::string const& name, Node const& n) {
      if (p.cochains.count(name)) n.doc->fail_key(n.pointer, "cochain name \"" + name + "\" is used twice");
      n.expect_object({"theory", "over", "degree", "f", "theta"}, {"theory", "over", "degree"});
      CochainSpec c;
      c.theory = read_theory(n.child("theory"));
      c.over = n.child("over").text();
      c.claimed_cocycle = cocycle;
      c.degree = n.child("degree").count();
      if (c.degree < 1) n.child("degree").fail("cochain degree must be at least 1");
      std::vector<std::string> const* domain;
      std::vector<std::string> const* target;
      std::string dname, tname;
      if (c.theory == Theory::Regular) {
        require_name(n.child("over"), p.operators, "operator");
        if (!p.is_difference_operator(c.over)) n.child("over").fail("regular cochains need an operator on an adjoint action");
        dname = tname = p.actions[p.operators[c.over].action].g;
        domain = target = &p.algebras[dname].basis;
      } else {
        require_name(n.child("over"), p.representations, "representation");
        auto const& r = p.representations[c.over];
        dname = p.actions[p.operators[r.base].action].g;
        domain = &p.algebras[dname].basis;
        tname = c.over;
        target = &r.space;
      }
      c.f = n.has("f") ? read_alternating(n.child("f"), c.degree, *domain, dname, *target, tname)
                       : AlternatingMap(domain->size(), c.degree, target->size());
      if (c.degree == 1) {
        if (n.has("theta")) n.child("theta").fail("degree-1 cochains have no theta component");
        c.theta = AlternatingMap(domain->size(), 0, target->size());
      } else {
        c.theta = n.has("theta") ? read_alternating(n.child("theta"), c.degree - 1, *domain, dname, *target, tname)
                                 : AlternatingMap(domain->size(), c.degree - 1, target->size());
      }
      p.cochains[name] = std::move(c);
    });
  };
  cochain_section("cochains", false);
  cochain_section("cocycles", true);

  section("homomorphisms", [&](std::string const& name, Node const& n) {
    n.expect_object({"source", "target", "g", "h"}, {"source", "target"});
    require_name(n.child("source"), p.operators, "operator");
    require_name(n.child("target"), p.operators, "operator");
    HomomorphismSpec hs{n.child("source").text(), n.child("target").text(), {}, {}};
    auto const& sa = p.actions[p.operators[hs.source].action];
    auto const& ta = p.actions[p.operators[hs.target].action];
    auto const& sg = p.algebras[sa.g].basis;
    auto const& sh = p.algebras[sa.h].basis;
    auto const& tg = p.algebras[ta.g].basis;
    auto const& th = p.algebras[ta.h].basis;
    hs.psi_g = n.has("g") ? read_linear(n.child("g"), sg, sa.g, tg, ta.g) : RationalMatrix(tg.size(), sg.size());
    hs.psi_h = n.has("h") ? read_linear(n.child("h"), sh, sa.h, th, ta.h) : RationalMatrix(th.size(), sh.size());
    p.homomorphisms[name] = std::move(hs);
  });

  section("grids", [&](std::string const& name, Node const& n) {
    n.expect_object({"values"}, {"values"});
    Node v = n.child("values");
    v.expect_array();
    if (v.value->empty()) v.fail("a grid needs at least one value");
    std::vector<Rational> values;
    for (std::size_t i = 0; i < v.value->size(); ++i) values.push_back(v.item(i).rational());
    p.grids[name] = std::move(values);
  });

  return p;
}

ProblemFile load_problem(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

namespace {

template <class Map>
auto const& lookup(Map const& m, std::string const& name, std::string const& kind) {
  auto it = m.find(name);
  if (it == m.end()) throw InputError("unknown " + kind + " \"" + name + "\"");
  return it->second;
}

}  // namespace

LieAlgebra ProblemFile::algebra(std::string const& name) const {
  auto const& a = lookup(algebras, name, "algebra");
  return LieAlgebra::unchecked(a.basis, a.bracket);
}

LieActTriple ProblemFile::action(std::string const& name) const {
  auto const& a = lookup(actions, name, "action");
  return LieActTriple::unchecked(algebra(a.g), algebra(a.h), a.rho);
}

RelDiffStructure ProblemFile::relative(std::string const& name) const {
  auto const& o = lookup(operators, name, "operator");
  return RelDiffStructure::unchecked(action(o.action), o.map);
}

bool ProblemFile::is_difference_operator(std::string const& name) const {
  auto const& o = lookup(operators, name, "operator");
  auto const& a = lookup(actions, o.action, "action");
  return a.adjoint;
}

DifferenceLieAlgebra ProblemFile::difference_algebra(std::string const& name) const {
  if (!is_difference_operator(name)) throw InputError("operator \"" + name + "\" is not on an adjoint action");
  auto const& o = lookup(operators, name, "operator");
  return DifferenceLieAlgebra::unchecked(algebra(lookup(actions, o.action, "action").g), o.map);
}

DiffRepresentation ProblemFile::representation(std::string const& name) const {
  auto const& r = lookup(representations, name, "representation");
  return DiffRepresentation::unchecked(difference_algebra(r.base), r.varrho, r.k);
}

RegularCochain ProblemFile::regular_cochain(std::string const& name) const {
  auto const& c = lookup(cochains, name, "cochain");
  if (c.theory != Theory::Regular) throw InputError("cochain \"" + name + "\" is not a regular cochain");
  return {c.degree, c.f, c.theta};
}

CoeffCochain ProblemFile::coeff_cochain(std::string const& name) const {
  auto const& c = lookup(cochains, name, "cochain");
  if (c.theory != Theory::Coeff) throw InputError("cochain \"" + name + "\" is not a coefficient cochain");
  return {c.degree, c.f, c.theta};
}

std::vector<std::string> const& ProblemFile::operator_domain(std::string const& name) const {
  auto const& o = lookup(operators, name, "operator");
  return lookup(algebras, lookup(actions, o.action, "action").g, "algebra").basis;
}

std::vector<std::string> const& ProblemFile::operator_target(std::string const& name) const {
  auto const& o = lookup(operators, name, "operator");
  return lookup(algebras, lookup(actions, o.action, "action").h, "algebra").basis;
}

std::vector<std::string> const& ProblemFile::cochain_domain(std::string const& name) const {
  auto const& c = lookup(cochains, name, "cochain");
  if (c.theory == Theory::Regular) return operator_domain(c.over);
  return operator_domain(lookup(representations, c.over, "representation").base);
}

std::vector<std::string> const& ProblemFile::cochain_target(std::string const& name) const {
  auto const& c = lookup(cochains, name, "cochain");
  if (c.theory == Theory::Regular) return operator_domain(c.over);
  return lookup(representations, c.over, "representation").space;
}

}  // namespace rdlie::cli
