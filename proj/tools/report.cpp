#include "report.hpp"

#include <sstream>

#include "solvlie/errors.hpp"
#include "solvlie/io.hpp"

namespace solvlie::report {

namespace {

const char* rel_name(Condition::Rel r) {
  switch (r) {
    case Condition::Rel::NonZero: return "nonzero";
    case Condition::Rel::Positive: return "positive";
    case Condition::Rel::Negative: return "negative";
    case Condition::Rel::Zero: return "zero";
    case Condition::Rel::NotAllZero: return "not-all-zero";
  }
  return "";
}

Condition::Rel rel_from(const std::string& s) {
  if (s == "nonzero") return Condition::Rel::NonZero;
  if (s == "positive") return Condition::Rel::Positive;
  if (s == "negative") return Condition::Rel::Negative;
  if (s == "zero") return Condition::Rel::Zero;
  if (s == "not-all-zero") return Condition::Rel::NotAllZero;
  throw Error(ErrorKind::ParseError, "unknown condition relation '" + s + "'");
}

Distinction distinction_from(const std::string& s) {
  for (auto d : {Distinction::DistinctBySignature, Distinction::DistinctByOrbit, Distinction::PossiblyConjugate})
    if (s == distinction_name(d)) return d;
  throw Error(ErrorKind::ParseError, "unknown certificate kind '" + s + "'");
}

template <class T>
json sizes(const std::vector<T>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

json signature_to_json(const InvariantSignature& s) {
  return {{"derived", sizes(s.derived)},
          {"lower_central", sizes(s.lower_central)},
          {"center", s.center},
          {"lattice", sizes(s.lattice)},
          {"shape_dim", s.shape_dim},
          {"derived_dim", s.derived_dim},
          {"normalizer_dim", s.normalizer_dim},
          {"centralizer_dim", s.centralizer_dim},
          {"ad_ranks", sizes(s.ad_ranks)}};
}

InvariantSignature signature_from_json(const json& j) {
  InvariantSignature s;
  s.derived = j.at("derived").get<std::vector<std::size_t>>();
  s.lower_central = j.at("lower_central").get<std::vector<std::size_t>>();
  s.center = j.at("center").get<std::size_t>();
  s.lattice = j.at("lattice").get<std::vector<std::size_t>>();
  s.shape_dim = j.at("shape_dim").get<std::size_t>();
  s.derived_dim = j.at("derived_dim").get<std::size_t>();
  s.normalizer_dim = j.at("normalizer_dim").get<std::size_t>();
  s.centralizer_dim = j.at("centralizer_dim").get<std::size_t>();
  s.ad_ranks = j.at("ad_ranks").get<std::vector<std::size_t>>();
  return s;
}

std::string stratum_text(const LieAlgebra& g, const IdealStratum& s) {
  std::string t = subspace_to_string(g, s.base);
  if (s.free_dim > 0) {
    t += " + any ";
    t += s.free_dim == 1 ? "line" : std::to_string(s.free_dim) + "-plane";
    t += " of " + subspace_to_string(g, s.free_space);
  }
  if (!s.constraints.empty()) t += " where " + to_string(s.constraints);
  return t;
}

std::string dot_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

std::vector<std::string> trace_lines(const LieAlgebra& g, const ReductionTrace& t) {
  std::vector<std::string> out;
  for (const auto& st : t.steps) out.push_back(st.describe(g));
  if (!t.note.empty()) out.push_back("note: " + t.note);
  return out;
}

}  // namespace

json conditions_to_json(const Conditions& cs) {
  json a = json::array();
  for (const auto& c : cs) {
    json e = json::array();
    for (const auto& x : c.exprs) e.push_back(x.to_string());
    a.push_back({{"rel", rel_name(c.rel)}, {"exprs", e}});
  }
  return a;
}

Conditions conditions_from_json(const json& j) {
  Conditions cs;
  for (const auto& c : j) {
    Condition k{rel_from(c.at("rel").get<std::string>()), {}};
    for (const auto& e : c.at("exprs")) k.exprs.push_back(parse_scalar(e.get<std::string>()));
    cs.push_back(k);
  }
  return cs;
}

json subspace_to_json(const LieAlgebra& g, const Subspace& s) {
  json b = json::array();
  for (const auto& v : s.basis_vectors()) b.push_back(g.element_to_string(v));
  return {{"basis", b}, {"constraints", conditions_to_json(s.constraints())}};
}

Subspace subspace_from_json(const LieAlgebra& g, const json& j) {
  Conditions cs = conditions_from_json(j.at("constraints"));
  std::vector<Vec> vs;
  for (const auto& e : j.at("basis")) vs.push_back(parse_element_expr(g, e.get<std::string>()));
  Subspace s = Subspace::span(g.dim(), vs, cs);
  s.add_constraints(cs);
  return s;
}

json check_to_json(const LieAlgebra& g) {
  std::vector<std::size_t> ds, ls;
  for (const auto& s : derived_series(g)) ds.push_back(s.dim());
  for (const auto& s : lower_central_series(g)) ls.push_back(s.dim());
  return {{"dim", g.dim()},
          {"field", g.field_radicand() == 0 ? std::string("rational") : "quad:" + std::to_string(g.field_radicand())},
          {"jacobi", true},
          {"solvable", is_solvable(g)},
          {"nilpotent", is_nilpotent(g)},
          {"abelian", is_abelian(g)},
          {"derived_series", sizes(ds)},
          {"lower_central_series", sizes(ls)},
          {"derived_algebra", subspace_to_json(g, derived_series(g).at(1))},
          {"center", subspace_to_json(g, center(g))}};
}

std::string check_to_text(const LieAlgebra& g) {
  std::ostringstream out;
  out << "algebra " << g.name() << " (dim " << g.dim() << ", field "
      << (g.field_radicand() == 0 ? std::string("rational") : "quad:" + std::to_string(g.field_radicand())) << ")\n";
  out << "jacobi: ok\n";
  out << "solvable: " << (is_solvable(g) ? "yes" : "no") << "\n";
  out << "nilpotent: " << (is_nilpotent(g) ? "yes" : "no") << "\n";
  out << "derived series:";
  for (const auto& s : derived_series(g)) out << " " << s.dim();
  out << "\nlower central series:";
  for (const auto& s : lower_central_series(g)) out << " " << s.dim();
  out << "\nderived algebra: " << subspace_to_string(g, derived_series(g).at(1)) << "\n";
  out << "center: " << subspace_to_string(g, center(g)) << "\n";
  return out.str();
}

json lattice_to_json(const LieAlgebra& g, const IdealLattice& lat, bool real) {
  json strata = json::array();
  for (std::size_t i = 0; i < lat.strata.size(); ++i) {
    const auto& s = lat.strata[i];
    json free = json::array();
    for (const auto& v : s.free_space.basis_vectors()) free.push_back(g.element_to_string(v));
    strata.push_back({{"id", i},
                      {"dim", s.dim()},
                      {"base", subspace_to_json(g, s.base)},
                      {"free_space", free},
                      {"free_dim", s.free_dim},
                      {"constraints", conditions_to_json(s.constraints)},
                      {"provenance", s.provenance},
                      {"parent", s.parent},
                      {"nested", s.nested},
                      {"key", s.key()}});
  }
  json edges = json::array();
  for (const auto& e : lat.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"every", e.every}});
  std::size_t proper = lat.proper().size();
  return {{"real", real}, {"proper_count", proper}, {"strata", strata}, {"edges", edges}, {"real_jumps", lat.real_jumps}};
}

IdealLattice lattice_from_json(const LieAlgebra& g, const json& j) {
  IdealLattice lat;
  for (const auto& s : j.at("strata")) {
    IdealStratum st;
    st.base = subspace_from_json(g, s.at("base"));
    std::vector<Vec> free;
    for (const auto& e : s.at("free_space")) free.push_back(parse_element_expr(g, e.get<std::string>()));
    st.free_space = Subspace::span(g.dim(), free);
    st.free_dim = s.at("free_dim").get<std::size_t>();
    st.constraints = conditions_from_json(s.at("constraints"));
    st.provenance = s.at("provenance").get<std::vector<std::string>>();
    st.parent = s.at("parent").get<std::string>();
    st.nested = s.at("nested").get<bool>();
    if (st.key() != s.at("key").get<std::string>())
      throw Error(ErrorKind::ParseError, "stratum " + std::to_string(s.at("id").get<std::size_t>()) + " does not match its key");
    lat.strata.push_back(st);
  }
  for (const auto& e : j.at("edges"))
    lat.edges.push_back({e.at("from").get<std::size_t>(), e.at("to").get<std::size_t>(), e.at("every").get<bool>()});
  lat.real_jumps = j.at("real_jumps").get<std::vector<int>>();
  return lat;
}

std::string lattice_to_text(const LieAlgebra& g, const IdealLattice& lat, bool real) {
  std::ostringstream out;
  auto proper = lat.proper();
  out << (real ? "real " : "") << "ideals of " << g.name() << ": " << proper.size() << " proper\n";
  std::size_t last = static_cast<std::size_t>(-1);
  for (const auto* s : proper) {
    if (s->dim() != last) {
      last = s->dim();
      out << "dim " << last << ":\n";
    }
    out << "  " << stratum_text(g, *s);
    if (s->nested) out << " [nested]";
    out << "\n";
  }
  return out.str();
}

std::string lattice_to_dot(const LieAlgebra& g, const IdealLattice& lat) {
  std::ostringstream out;
  out << "digraph \"" << dot_escape(g.name()) << "_ideals\" {\n";
  for (std::size_t i = 0; i < lat.strata.size(); ++i)
    out << "  s" << i << " [label=\"" << dot_escape(stratum_text(g, lat.strata[i])) << "\"];\n";
  for (const auto& e : lat.edges)
    out << "  s" << e.from << " -> s" << e.to << (e.every ? "" : " [style=dashed]") << ";\n";
  out << "}\n";
  return out.str();
}

json classification_to_json(const LieAlgebra& g, const Classification& c, bool traces) {
  json dims = json::array();
  for (std::size_t d = 1; d < c.by_dim.size(); ++d) {
    json classes = json::array();
    for (const auto& k : c.by_dim[d]) {
      json e = {{"representative", subspace_to_json(g, k.representative)},
                {"constraints", conditions_to_json(k.constraints)},
                {"labels", k.labels},
                {"family", k.family},
                {"signature", signature_to_json(k.signature)},
                {"provenance", k.provenance},
                {"flags", k.flags},
                {"key", k.key()}};
      if (traces) e["trace"] = trace_lines(g, k.trace);
      classes.push_back(e);
    }
    dims.push_back({{"dim", d}, {"count", c.by_dim[d].size()}, {"classes", classes}});
  }
  json certs = json::array();
  for (const auto& p : c.certificates)
    certs.push_back({{"dim", p.dim}, {"a", p.a}, {"b", p.b}, {"kind", distinction_name(p.result.kind)}, {"reason", p.result.reason}});
  return {{"dimensions", dims}, {"certificates", certs}, {"merged", c.merged}};
}

Classification classification_from_json(const LieAlgebra& g, const json& j) {
  Classification c;
  c.by_dim.resize(1);
  for (const auto& d : j.at("dimensions")) {
    std::size_t dim = d.at("dim").get<std::size_t>();
    if (c.by_dim.size() <= dim) c.by_dim.resize(dim + 1);
    for (const auto& e : d.at("classes")) {
      SubalgebraClass k;
      k.dim = dim;
      k.representative = subspace_from_json(g, e.at("representative"));
      k.constraints = conditions_from_json(e.at("constraints"));
      k.labels = e.at("labels").get<std::vector<std::string>>();
      k.family = e.at("family").get<std::string>();
      k.signature = signature_from_json(e.at("signature"));
      k.provenance = e.at("provenance").get<std::vector<std::string>>();
      k.flags = e.at("flags").get<std::vector<std::string>>();
      if (k.key() != e.at("key").get<std::string>())
        throw Error(ErrorKind::ParseError, "class " + k.key() + " does not match its recorded key");
      c.by_dim[dim].push_back(k);
    }
  }
  for (const auto& p : j.at("certificates"))
    c.certificates.push_back({p.at("dim").get<std::size_t>(), p.at("a").get<std::size_t>(), p.at("b").get<std::size_t>(),
                              {distinction_from(p.at("kind").get<std::string>()), p.at("reason").get<std::string>()}});
  c.merged = j.at("merged").get<std::vector<std::string>>();
  return c;
}

std::string classification_to_text(const LieAlgebra& g, const Classification& c, bool traces) {
  std::ostringstream out;
  out << "subalgebra classes of " << g.name() << "\n";
  for (std::size_t d = 1; d < c.by_dim.size(); ++d) {
    out << "dim " << d << ": " << c.by_dim[d].size() << " classes\n";
    for (const auto& k : c.by_dim[d]) {
      out << "  " << subspace_to_string(g, k.representative);
      if (!k.constraints.empty()) out << " where " << to_string(k.constraints);
      if (!k.family.empty()) out << "  (" << k.family << ")";
      for (const auto& f : k.flags) out << " [" << f << "]";
      out << "\n";
      if (traces)
        for (const auto& l : trace_lines(g, k.trace)) out << "      " << l << "\n";
    }
    for (const auto& p : c.certificates)
      if (p.dim == d && p.result.kind == Distinction::PossiblyConjugate)
        out << "  possibly conjugate: #" << p.a << " and #" << p.b << "\n";
  }
  for (const auto& m : c.merged) out << "merged: " << m << "\n";
  return out.str();
}

std::string classification_to_dot(const LieAlgebra& g, const Classification& c) {
  std::ostringstream out;
  out << "digraph \"" << dot_escape(g.name()) << "_classes\" {\n";
  std::map<std::string, std::string> node_of;
  for (std::size_t d = 1; d < c.by_dim.size(); ++d)
    for (std::size_t i = 0; i < c.by_dim[d].size(); ++i) {
      const auto& k = c.by_dim[d][i];
      std::string id = "c" + std::to_string(d) + "_" + std::to_string(i);
      node_of[subspace_to_string(g, k.representative)] = id;
      out << "  " << id << " [label=\"" << dot_escape(subspace_to_string(g, k.representative)) << "\"];\n";
    }
  const std::string prefix = "extends ";
  for (std::size_t d = 1; d < c.by_dim.size(); ++d)
    for (std::size_t i = 0; i < c.by_dim[d].size(); ++i)
      for (const auto& p : c.by_dim[d][i].provenance) {
        if (p.rfind(prefix, 0) != 0) continue;
        auto end = p.find(" by ");
        auto it = node_of.find(p.substr(prefix.size(), end == std::string::npos ? std::string::npos : end - prefix.size()));
        if (it != node_of.end()) out << "  " << it->second << " -> c" << d << "_" << i << ";\n";
      }
  out << "}\n";
  return out.str();
}

json oracle_to_json(const LieAlgebra& g, const OracleReport& r) {
  (void)g;
  return {{"prime", r.prime},
          {"skipped", r.skipped},
          {"reason", r.reason},
          {"counted", r.counted},
          {"predicted", r.predicted},
          {"predictable", r.predictable},
          {"agrees", r.agrees()}};
}

std::string oracle_to_text(const LieAlgebra& g, const OracleReport& r) {
  std::ostringstream out;
  out << "finite-field oracle for " << g.name() << " over F_" << r.prime << "\n";
  if (r.skipped) {
    out << "skipped: " << r.reason << "\n";
    return out.str();
  }
  for (std::size_t d = 0; d < r.counted.size(); ++d) {
    out << "dim " << d << ": counted " << r.counted[d] << ", predicted ";
    if (d < r.predictable.size() && r.predictable[d]) out << r.predicted[d];
    else out << "n/a";
    out << "\n";
  }
  out << (r.agrees() ? "agree" : "MISMATCH") << "\n";
  return out.str();
}

json envelope(const std::string& command, const LieAlgebra& g, json payload) {
  return {{"format", kFormat}, {"version", kVersion}, {"command", command},
          {"algebra", {{"name", g.name()}, {"text", serialize_algebra(g)}}}, {"result", std::move(payload)}};
}

LieAlgebra algebra_from_envelope(const json& j) {
  if (j.at("format").get<std::string>() != kFormat) throw Error(ErrorKind::ParseError, "not a solvlie report");
  if (j.at("version").get<int>() != kVersion)
    throw Error(ErrorKind::ParseError, "unsupported report version " + std::to_string(j.at("version").get<int>()));
  return parse_algebra_text(j.at("algebra").at("text").get<std::string>());
}

json error_object(const std::string& kind, const std::string& message, int exit_code) {
  return {{"format", kFormat}, {"version", kVersion}, {"error", {{"kind", kind}, {"message", message}, {"exit_code", exit_code}}}};
}

}  // namespace solvlie::report
