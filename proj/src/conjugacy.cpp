#include "solvlie/conjugacy.hpp"

#include <algorithm>
#include <set>

#include "solvlie/errors.hpp"
#include "solvlie/io.hpp"

namespace solvlie {

IdealLattice lattice_for(const LieAlgebra& g) {
  return g.is_complex() ? enumerate_ideals(g) : enumerate_ideals_real(g);
}

namespace {

std::set<std::string> lattice_params(const IdealLattice& lattice) {
  std::set<std::string> out;
  for (const auto& s : lattice.strata) {
    for (const auto& p : s.base.params()) out.insert(p);
    for (const auto& p : s.free_space.params()) out.insert(p);
  }
  return out;
}

// Condition that v lies outside `e`; nullopt when v is identically inside.
std::optional<Conditions> outside(const Subspace& e, const Vec& v) {
  Vec r = e.reduce(v);
  std::vector<Scalar> nz;
  for (const auto& x : r) {
    if (x.is_zero()) continue;
    if (x.is_constant()) return Conditions{};
    nz.push_back(x);
  }
  if (nz.empty()) return std::nullopt;
  if (nz.size() == 1) return Conditions{Condition::nonzero(nz[0])};
  return Conditions{Condition{Condition::Rel::NotAllZero, nz}};
}

}  // namespace

std::vector<CandidateForm> candidate_forms_1d(const LieAlgebra& g, const IdealLattice& lattice) {
  const std::size_t n = g.dim();
  std::vector<std::string> reserved = g.labels();
  for (const auto& p : lattice_params(lattice)) reserved.push_back(p);
  ParamPool pool(reserved);

  std::vector<CandidateForm> out;
  for (const auto& s : lattice.strata) {
    if (s.dim() == 0 || s.free_dim >= 2) continue;
    std::vector<Vec> ordered;
    std::vector<Vec> base_part;
    if (s.free_dim == 0) {
      Subspace smaller(n);
      for (const auto& o : lattice.strata)
        if (o.dim() > 0 && o.dim() < s.dim() && s.base.contains(o.envelope())) smaller = smaller + o.envelope();
      ordered = smaller.complement_in(s.base);
      for (const auto& v : smaller.basis_vectors()) ordered.push_back(v);
    } else {
      ordered = s.free_space.basis_vectors();
      base_part = s.base.basis_vectors();
    }
    // Charts are built with throwaway names; kept charts get fresh pool names.
    ParamPool scratch(reserved);
    for (const auto& cell : schubert_cells(ordered, 1, scratch)) {
      Vec v = cell.front();
      for (const auto& b : base_part) v = v + Scalar::param(scratch.fresh()) * b;
      Conditions cs = s.constraints;
      bool empty = false;
      for (const auto& o : lattice.strata) {
        if (o.dim() == 0 || o.dim() >= s.dim()) continue;
        Subspace e = o.envelope();
        if (!e.is_parameter_free()) continue;
        auto c = outside(e, v);
        if (!c) {
          empty = true;
          break;
        }
        cs.insert(cs.end(), c->begin(), c->end());
      }
      if (empty) continue;
      std::map<std::string, Scalar> rename;
      std::vector<std::string> order;
      for (const auto& x : v)
        for (const auto& p : x.params())
          if (!rename.count(p) && !s.base.params().count(p)) {
            rename[p] = Scalar::param(pool.fresh());
            order.push_back(p);
          }
      CandidateForm f;
      f.element = substitute(v, rename);
      Conditions renamed;
      for (auto c : cs) {
        for (auto& e : c.exprs) e = e.substitute(rename);
        renamed.push_back(c);
      }
      f.constraints = canonical_conditions(renamed);
      f.shape = s;
      out.push_back(f);
    }
  }
  return out;
}

// ---------------------------------------------------------------- signatures

bool InvariantSignature::operator==(const InvariantSignature& o) const {
  return derived == o.derived && lower_central == o.lower_central && center == o.center && lattice == o.lattice &&
         shape_dim == o.shape_dim && derived_dim == o.derived_dim && normalizer_dim == o.normalizer_dim &&
         centralizer_dim == o.centralizer_dim && ad_ranks == o.ad_ranks;
}

namespace {

std::string dims(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

std::string InvariantSignature::to_string() const {
  std::string s = "derived=" + dims(derived) + " lower_central=" + dims(lower_central) +
                  " center=" + std::to_string(center) + " ideals=" + dims(lattice) +
                  " shape=" + std::to_string(shape_dim) + " bracket=" + std::to_string(derived_dim) +
                  " normalizer=" + std::to_string(normalizer_dim) + " centralizer=" + std::to_string(centralizer_dim);
  if (!ad_ranks.empty()) s += " ad_ranks=" + dims(ad_ranks);
  return s;
}

InvariantSignature invariant_signature(const LieAlgebra& g, const Subspace& s, const IdealLattice& lattice) {
  InvariantSignature sig;
  const std::size_t n = g.dim();
  for (const auto& d : derived_series(g)) sig.derived.push_back(s.intersect(d).dim());
  for (const auto& d : lower_central_series(g)) sig.lower_central.push_back(s.intersect(d).dim());
  sig.center = s.intersect(center(g)).dim();
  sig.shape_dim = n;
  for (const auto& st : lattice.strata) {
    if (st.is_concrete() && st.base.is_parameter_free()) {
      if (st.dim() > 0 && st.dim() < n) sig.lattice.push_back(s.intersect(st.base).dim());
      if (st.base.contains(s)) sig.shape_dim = std::min(sig.shape_dim, st.dim());
    } else if (!st.is_concrete() && st.base.is_parameter_free() && st.free_space.is_parameter_free()) {
      Subspace env = st.envelope();
      if (env.contains(s) && (s + st.base).dim() <= st.dim()) sig.shape_dim = std::min(sig.shape_dim, st.dim());
    }
  }
  if (s.dim() == 0) sig.shape_dim = 0;
  sig.derived_dim = bracket_space(g, s, s).dim();
  try {
    sig.normalizer_dim = normalizer(g, s).dim();
  } catch (const Error&) {
    sig.normalizer_dim = 0;
  }
  sig.centralizer_dim = centralizer(g, s).dim();
  if (s.dim() == 1) {
    Matrix m = adjoint_matrix(g, s.basis().row(0));
    Matrix p = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
      p = p * m;
      sig.ad_ranks.push_back(rank(p, s.constraints()));
    }
  }
  return sig;
}

InvariantSignature invariant_signature(const LieAlgebra& g, const Subspace& s) {
  return invariant_signature(g, s, lattice_for(g));
}

// ---------------------------------------------------------------- reduction

const char* step_kind_name(ReductionStep::Kind kind) {
  switch (kind) {
    case ReductionStep::Kind::Kill: return "kill";
    case ReductionStep::Kind::Scale: return "scale";
    case ReductionStep::Kind::Rotate: return "rotate";
    case ReductionStep::Kind::Align: return "align";
  }
  return "?";
}

std::string ReductionStep::describe(const LieAlgebra& g) const {
  std::string s = step_kind_name(kind);
  s += ":";
  for (std::size_t i = 0; i < generators.size(); ++i)
    s += " exp(" + times[i] + " ad(" + g.element_to_string(generators[i]) + "))";
  std::string sol;
  for (const auto& [t, v] : times_solved) sol += (sol.empty() ? "" : ", ") + t + " = " + v.to_string();
  if (kind == Kind::Scale && exponent != 0)
    sol += (sol.empty() ? "" : ", ") + std::string("u_") + times[0] + "^" + std::to_string(exponent) + " = " +
           unit_value.to_string();
  if (!sol.empty()) s += " with " + sol;
  if (!branch.empty()) s += " [" + solvlie::to_string(branch) + "]";
  s += " -> " + g.element_to_string(after);
  return s;
}

namespace {

std::optional<std::size_t> pivot_of(const Vec& v, const Conditions& cs) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (entails_nonzero(v[i], cs)) return i;
  return std::nullopt;
}

Vec normalized(const Vec& v, const Conditions& cs) {
  auto p = pivot_of(v, cs);
  if (!p) return v;
  return (Scalar(1) / v[*p]) * v;
}

std::size_t support(const Vec& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Scalar& x) { return !x.is_zero(); }));
}

bool same_line(const Vec& a, const Vec& b) {
  const std::size_t n = a.size();
  return Subspace::span(n, {a}) == Subspace::span(n, {b});
}

// s == c * u^e with c free of u and e != 0.
std::optional<std::pair<Scalar, long>> unit_monomial(const Scalar& s, const std::string& u) {
  if (!s.depends_on(u)) return std::nullopt;
  Scalar c = s.substitute(u, Scalar(1));
  if (c.is_zero()) return std::nullopt;
  Scalar up = Scalar::param(u);
  for (long e = 1; e <= 48; ++e) {
    if (s == c * up.pow(static_cast<int>(e))) return std::make_pair(c, e);
    if (s == c * up.pow(-static_cast<int>(e))) return std::make_pair(c, -e);
  }
  return std::nullopt;
}

// Replaces u^e by value in every coordinate that is a monomial in u with exponent divisible by e.
std::optional<Vec> substitute_unit_power(const Vec& v, const std::string& u, long e, const Scalar& value) {
  if (e == 1) return substitute(v, {{u, value}});
  if (e == -1) return substitute(v, {{u, Scalar(1) / value}});
  Vec out = v;
  for (auto& x : out) {
    if (!x.depends_on(u)) continue;
    auto m = unit_monomial(x, u);
    if (!m || m->second % e != 0) return std::nullopt;
    x = m->first * value.pow(static_cast<int>(m->second / e));
  }
  return out;
}

bool is_bare_param_multiple(const Scalar& c, std::string& name) {
  if (!c.denominator().is_constant() || c.numerator().terms().size() != 1) return false;
  const auto& m = c.numerator().leading_monomial();
  if (m.size() != 1 || m[0].second != 1) return false;
  name = m[0].first;
  return true;
}

// c = 0 solved for a parameter entering linearly with a constant coefficient.
std::optional<std::pair<std::string, Scalar>> zero_solution(const Scalar& c) {
  Scalar num(c.numerator());
  for (const auto& p : num.params()) {
    if (c.denominator().variables().count(p)) continue;
    auto co = num.coefficients_in(p);
    if (co && co->size() == 2 && (*co)[1].is_constant()) return std::make_pair(p, -(*co)[0] / (*co)[1]);
  }
  return std::nullopt;
}

struct Line {
  Vec v;
  Conditions cs;
  ReductionTrace trace;
};

std::vector<const FlowGenerator*> movers(const GroupWord& word) {
  std::vector<const FlowGenerator*> out;
  // innermost first, skipping the factor generated by the element itself
  for (std::size_t i = word.factors.size(); i-- > 0;)
    if (i + 1 != word.factors.size()) out.push_back(&word.factors[i]);
  return out;
}

bool try_kill(Line& line, const GroupWord& word) {
  std::vector<const FlowGenerator*> uni;
  for (const auto* f : movers(word))
    if (f->kind == FlowGenerator::Kind::Unipotent && !f->matrix.is_zero()) uni.push_back(f);
  if (uni.empty()) return false;
  Vec cur = line.v;
  for (const auto* f : uni) cur = flow_matrix(*f) * cur;
  // pivot on a coordinate the flows leave unchanged when there is one
  std::optional<std::size_t> p;
  for (std::size_t i = 0; i < cur.size() && !p; ++i) {
    if (!entails_nonzero(line.v[i], line.cs)) continue;
    bool moved = false;
    for (const auto* f : uni) moved = moved || cur[i].depends_on(f->time);
    if (!moved) p = i;
  }
  if (!p) p = pivot_of(line.v, line.cs);
  if (!p) return false;
  cur = (Scalar(1) / cur[*p]) * cur;

  std::map<std::string, Scalar> solved;
  for (std::size_t j = 0; j < cur.size(); ++j) {
    if (j == *p || cur[j].is_zero()) continue;
    for (const auto* f : uni) {
      const std::string& t = f->time;
      if (solved.count(t)) continue;
      auto co = cur[j].coefficients_in(t);
      if (!co || co->size() != 2 || !entails_nonzero((*co)[1], line.cs)) continue;
      bool clean = true;
      for (const auto* h : uni)
        if ((*co)[1].depends_on(h->time)) clean = false;
      if (!clean) continue;
      Scalar value = -(*co)[0] / (*co)[1];
      for (auto& [k, v] : solved) v = v.substitute(t, value);
      solved[t] = value;
      cur = substitute(cur, {{t, value}});
      break;
    }
  }
  if (solved.empty()) return false;
  std::map<std::string, Scalar> rest;
  for (const auto* f : uni)
    if (!solved.count(f->time)) rest[f->time] = Scalar(0);
  for (auto& [k, v] : solved) v = v.substitute(rest);
  for (const auto& [k, v] : rest) solved[k] = v;
  cur = normalized(substitute(cur, rest), line.cs);
  if (support(cur) > support(line.v)) return false;
  if (support(cur) == support(line.v)) {
    // equal support: accept only when the surviving coordinates moved to later basis positions
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!line.v[i].is_zero()) a.push_back(i);
      if (!cur[i].is_zero()) b.push_back(i);
    }
    if (!(b > a)) return false;
  }

  ReductionStep st;
  st.kind = ReductionStep::Kind::Kill;
  for (const auto* f : uni) {
    st.generators.push_back(f->element);
    st.times.push_back(f->time);
  }
  st.times_solved = solved;
  st.before = line.v;
  st.after = cur;
  line.trace.steps.push_back(st);
  line.v = cur;
  return true;
}

bool try_scale(Line& line, const GroupWord& word, std::vector<Line>& forks) {
  for (const auto* f : movers(word)) {
    if (f->kind != FlowGenerator::Kind::Scaling) continue;
    auto p = pivot_of(line.v, line.cs);
    if (!p) return false;
    Vec w = flow_matrix(*f) * line.v;
    w = (Scalar(1) / w[*p]) * w;
    const std::string u = f->unit_symbol();
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j == *p || line.v[j].is_zero()) continue;
      auto mono = unit_monomial(w[j], u);
      if (!mono) continue;
      const auto& [c, e] = *mono;
      if (c.radicand() < 0) continue;
      if (c.is_constant() && (c == Scalar(1) || c == Scalar(-1))) continue;
      bool others = false;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != j && w[k].depends_on(u)) others = true;
      if (others && std::abs(e) != 1) continue;

      Sign sg = sign_of(c, line.cs);
      std::vector<int> signs;
      if (sg == Sign::Positive) signs = {1};
      else if (sg == Sign::Negative) signs = {-1};
      else if (sg == Sign::Unknown) signs = {1, -1};
      else continue;
      std::optional<std::pair<std::string, Scalar>> zsol;
      if (sg == Sign::Unknown && !entails_nonzero(c, line.cs)) zsol = zero_solution(c);
      bool zero_branch = zsol.has_value();
      if (sg == Sign::Unknown && !entails_nonzero(c, line.cs) && !zero_branch) continue;

      for (int sigma : signs) {
        Line nl = line;
        Scalar value = Scalar(sigma) / c;
        Vec nv;
        if (std::abs(e) == 1) {
          nv = *substitute_unit_power(w, u, e, value);
        } else {
          nv = w;
          nv[j] = Scalar(sigma);
        }
        ReductionStep st;
        st.kind = ReductionStep::Kind::Scale;
        st.generators = {f->element};
        st.times = {f->time};
        st.exponent = e;
        st.unit_value = value;
        st.before = line.v;
        st.after = normalized(nv, line.cs);
        if (sg == Sign::Unknown) {
          st.branch = {sigma > 0 ? Condition::positive(c) : Condition::negative(c)};
          nl.cs.push_back(st.branch.front());
          nl.trace.case_splits.push_back(st.branch.front());
        }
        nl.trace.steps.push_back(st);
        nl.v = st.after;
        forks.push_back(nl);
      }
      if (zero_branch) {
        Line nl = line;
        ReductionStep st;
        st.kind = ReductionStep::Kind::Scale;
        st.generators = {f->element};
        st.times = {f->time};
        st.branch = {Condition::zero(c)};
        st.before = line.v;
        st.after = normalized(substitute(line.v, {{zsol->first, zsol->second}}), line.cs);
        nl.cs.push_back(st.branch.front());
        nl.trace.case_splits.push_back(st.branch.front());
        nl.trace.steps.push_back(st);
        nl.v = st.after;
        forks.push_back(nl);
      }
      return true;
    }
  }
  return false;
}

bool try_rotate(Line& line, const GroupWord& word) {
  const std::size_t n = line.v.size();
  for (const auto* f : movers(word)) {
    if (f->kind != FlowGenerator::Kind::Rotation) continue;
    for (const auto& pl : f->planes) {
      std::size_t same = 0;
      for (const auto& o : f->planes)
        if (o.alpha == pl.alpha && o.beta == pl.beta) ++same;
      if (same != 1) continue;
      Subspace plane = Subspace::span(n, {pl.p, pl.q});
      if (!plane.contains(line.v)) continue;
      Vec target = plane.basis().row(0);
      if (same_line(target, line.v)) continue;
      ReductionStep st;
      st.kind = ReductionStep::Kind::Rotate;
      st.generators = {f->element};
      st.times = {f->time};
      st.before = line.v;
      st.after = target;
      line.trace.steps.push_back(st);
      line.v = target;
      return true;
    }
  }
  return false;
}

constexpr int kMaxMoves = 40;

}  // namespace


bool SubalgebraClass::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

namespace {

std::vector<std::string> params_in_order(const Subspace& s) {
  std::vector<std::string> order;
  for (const auto& row : s.basis_vectors())
    for (const auto& x : row)
      for (const auto& p : x.params())
        if (std::find(order.begin(), order.end(), p) == order.end()) order.push_back(p);
  return order;
}

Conditions restrict_to(const Conditions& cs, const std::set<std::string>& names) {
  Conditions out;
  for (const auto& c : cs) {
    auto ps = c.params();
    if (!ps.empty() && std::includes(names.begin(), names.end(), ps.begin(), ps.end())) out.push_back(c);
  }
  return canonical_conditions(out);
}

// Surviving compound coordinates become fresh labels when that loses nothing:
// each expression owns a parameter that enters it linearly with constant coefficient.
Vec relabel_moduli(const Vec& v, const Conditions& cs, ParamPool& pool) {
  std::set<std::string> constrained;
  for (const auto& c : cs)
    for (const auto& p : c.params()) constrained.insert(p);
  std::map<std::string, int> uses;
  for (const auto& x : v)
    for (const auto& p : x.params()) ++uses[p];
  Vec out = v;
  for (auto& x : out) {
    if (x.is_constant()) continue;
    std::string bare;
    if (x.denominator().is_constant() && x.numerator().terms().size() == 1 && is_bare_param_multiple(x, bare) &&
        x.numerator().leading_coefficient().is_one())
      continue;
    bool ok = false;
    for (const auto& p : x.params()) {
      if (uses[p] != 1 || constrained.count(p)) continue;
      auto co = x.coefficients_in(p);
      if (co && co->size() == 2 && (*co)[1].is_constant()) ok = true;
    }
    for (const auto& p : x.params())
      if (constrained.count(p)) ok = false;
    if (ok) x = Scalar::param(pool.fresh());
  }
  return out;
}

// A null lattice skips the signature.
std::string family_text(const std::vector<std::string>& labels) {
  std::string out = "one class for each value of ";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? ", " : "") + labels[i];
  return out;
}

SubalgebraClass make_class(const LieAlgebra& g, const Subspace& rep, const Conditions& cs, const IdealLattice* lattice) {
  SubalgebraClass c;
  c.dim = rep.dim();
  auto order = params_in_order(rep);
  std::set<std::string> names(order.begin(), order.end());
  c.constraints = restrict_to(cs, names);
  c.representative = Subspace::span(g.dim(), rep.basis_vectors(), c.constraints);
  c.representative.add_constraints(c.constraints);
  c.labels = order;
  if (lattice) c.signature = invariant_signature(g, c.representative, *lattice);
  return c;
}

}  // namespace

std::string SubalgebraClass::key() const {
  auto order = params_in_order(representative);
  std::map<std::string, Scalar> ren;
  for (std::size_t i = 0; i < order.size(); ++i) ren[order[i]] = Scalar::param("_" + std::to_string(i));
  std::string k = representative.substitute(ren).key();
  Conditions cs;
  for (auto c : constraints) {
    for (auto& e : c.exprs) e = e.substitute(ren);
    cs.push_back(c);
  }
  return k + "#" + solvlie::to_string(canonical_conditions(cs));
}

namespace {

std::vector<std::pair<SubalgebraClass, ReductionTrace>> reduce_with(const LieAlgebra& g, const CandidateForm& form,
                                                                   const IdealLattice* lattice) {
  const std::size_t n = g.dim();
  std::set<std::string> reserved_set(g.labels().begin(), g.labels().end());
  for (const auto& p : params_of(form.element)) reserved_set.insert(p);
  ParamPool pool(std::vector<std::string>(reserved_set.begin(), reserved_set.end()));

  Line start;
  start.v = normalized(form.element, form.constraints);
  start.cs = form.constraints;
  start.trace.input = start.v;

  std::vector<Line> work{start}, done;
  bool is_ideal_line = form.shape.dim() == 1;
  while (!work.empty()) {
    Line line = work.back();
    work.pop_back();
    bool forked = false;
    int moves = 0;
    while (!is_ideal_line) {
      if (++moves > kMaxMoves) {
        line.trace.manual = true;
        line.trace.note = "move limit reached";
        break;
      }
      GroupWord word;
      try {
        word = normalizer_chain_factorization(g, line.v);
      } catch (const Error& e) {
        line.trace.manual = true;
        line.trace.note = e.what();
        break;
      }
      for (const auto* f : movers(word))
        if (f->kind == FlowGenerator::Kind::Mixed && !f->flowable) {
          line.trace.manual = true;
          line.trace.note = "blocked generator: " + f->obstruction;
        }
      if (try_kill(line, word)) continue;
      std::vector<Line> forks;
      if (try_scale(line, word, forks)) {
        for (auto& f : forks) work.push_back(f);
        forked = true;
        break;
      }
      if (try_rotate(line, word)) continue;
      break;
    }
    if (!forked) done.push_back(line);
  }

  std::vector<std::pair<SubalgebraClass, ReductionTrace>> out;
  std::set<std::string> seen;
  std::reverse(done.begin(), done.end());
  for (auto& line : done) {
    Vec v = relabel_moduli(line.v, line.cs, pool);
    if (v != line.v)
      line.trace.note += (line.trace.note.empty() ? "" : "; ") + std::string("compound coordinates renamed as labels");
    SubalgebraClass c = make_class(g, Subspace::span(n, {v}), line.cs, lattice);
    if (!seen.insert(c.key()).second) continue;
    c.trace = line.trace;
    if (line.trace.manual) c.flags.push_back("manual");
    if (!c.labels.empty()) {
      c.family = family_text(c.labels);
    } else if (is_ideal_line && form.shape.free_dim == 1 && form.shape.base.dim() == 0) {
      c.family = "any line of " + subspace_to_string(g, form.shape.free_space);
    }
    c.provenance.push_back("candidate " + g.element_to_string(form.element) +
                           (form.constraints.empty() ? "" : " where " + solvlie::to_string(form.constraints)));
    out.emplace_back(c, line.trace);
  }
  return out;
}

bool class_less(const SubalgebraClass& a, const SubalgebraClass& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.representative.pivots() != b.representative.pivots())
    return a.representative.pivots() < b.representative.pivots();
  if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size();
  std::size_t sa = 0, sb = 0;
  for (const auto& r : a.representative.basis_vectors()) sa += support(r);
  for (const auto& r : b.representative.basis_vectors()) sb += support(r);
  if (sa != sb) return sa < sb;
  return a.key() < b.key();
}

std::vector<SubalgebraClass> classify_1d_with(const LieAlgebra& g, const IdealLattice& lattice) {
  std::vector<SubalgebraClass> out;
  std::map<std::string, std::size_t> index;
  for (const auto& form : candidate_forms_1d(g, lattice)) {
    for (auto& [c, tr] : reduce_with(g, form, &lattice)) {
      auto it = index.find(c.key());
      if (it != index.end()) {
        auto& prev = out[it->second].provenance;
        prev.insert(prev.end(), c.provenance.begin(), c.provenance.end());
        continue;
      }
      index[c.key()] = out.size();
      out.push_back(c);
    }
  }
  std::stable_sort(out.begin(), out.end(), class_less);
  return out;
}

}  // namespace

std::vector<std::pair<SubalgebraClass, ReductionTrace>> reduce_element(const LieAlgebra& g, const CandidateForm& form) {
  IdealLattice lattice = lattice_for(g);
  return reduce_with(g, form, &lattice);
}

std::vector<SubalgebraClass> classify_1d(const LieAlgebra& g) {
  require_solvable(g);
  return classify_1d_with(g, lattice_for(g));
}

bool replay(const LieAlgebra& g, const ReductionTrace& trace) {
  Vec cur = trace.input;
  for (const auto& st : trace.steps) {
    if (!same_line(cur, st.before)) return false;
    Vec moved = st.before;
    switch (st.kind) {
      case ReductionStep::Kind::Kill:
      case ReductionStep::Kind::Align:
        for (std::size_t i = 0; i < st.generators.size(); ++i)
          moved = flow_matrix(classify_generator(g, st.generators[i], st.times[i])) * moved;
        moved = substitute(moved, st.times_solved);
        break;
      case ReductionStep::Kind::Scale:
        if (st.exponent == 0) {
          for (const auto& c : st.branch)
            for (const auto& e : c.exprs)
              if (auto z = zero_solution(e)) moved = substitute(moved, {{z->first, z->second}});
        } else {
          auto f = classify_generator(g, st.generators[0], st.times[0]);
          Vec w = flow_matrix(f) * moved;
          auto p = pivot_of(moved, {});
          if (!p) return false;
          auto r = substitute_unit_power((Scalar(1) / w[*p]) * w, f.unit_symbol(), st.exponent, st.unit_value);
          if (!r) return false;
          moved = *r;
          // a unit exponent other than +-1 only fixes the normalized coordinate
        }
        break;
      case ReductionStep::Kind::Rotate: {
        auto f = classify_generator(g, st.generators[0], st.times[0]);
        bool ok = false;
        for (const auto& pl : f.planes) {
          Subspace plane = Subspace::span(g.dim(), {pl.p, pl.q});
          if (plane.contains(st.before) && plane.contains(st.after)) ok = true;
        }
        if (!ok) return false;
        moved = st.after;
        break;
      }
    }
    if (!same_line(moved, st.after)) return false;
    cur = st.after;
  }
  return true;
}


namespace {

std::vector<SubalgebraClass> extend_with(const LieAlgebra& g, const SubalgebraClass& s, const IdealLattice& lattice) {
  const Subspace& rep = s.representative;
  Subspace n = normalizer(g, rep);
  n.add_constraints(s.constraints);
  if (n.dim() == rep.dim()) return {};
  SubalgebraView view = subalgebra_as_algebra(g, n);
  std::vector<Vec> local;
  for (const auto& r : rep.basis_vectors()) local.push_back(view.to_local(r));
  QuotientMap q = quotient(view.algebra, Subspace::span(n.dim(), local, s.constraints));

  std::set<std::string> reserved(g.labels().begin(), g.labels().end());
  for (const auto& p : rep.params()) reserved.insert(p);
  ParamPool pool(std::vector<std::string>(reserved.begin(), reserved.end()));

  std::vector<SubalgebraClass> out;
  for (const auto& qc : classify_1d_with(q.target, lattice_for(q.target))) {
    std::map<std::string, Scalar> ren;
    for (const auto& p : params_in_order(qc.representative)) ren[p] = Scalar::param(pool.fresh());
    Vec y = substitute(qc.representative.basis_vectors().front(), ren);
    Vec lifted = view.to_ambient(q.lift(y));
    Conditions cs = s.constraints;
    for (auto c : qc.constraints) {
      for (auto& e : c.exprs) e = e.substitute(ren);
      cs.push_back(c);
    }
    cs = canonical_conditions(cs);
    auto rows = rep.basis_vectors();
    rows.push_back(lifted);
    SubalgebraClass c = make_class(g, Subspace::span(g.dim(), rows, cs), cs, &lattice);
    c.constraints = canonical_conditions(cs);
    if (!c.labels.empty()) c.family = family_text(c.labels);
    c.provenance.push_back("extends " + subspace_to_string(g, rep) + " by " + g.element_to_string(lifted));
    c.trace.input = lifted;
    c.trace.note = "reduced in the quotient of the normalizer";
    if (s.has_flag("manual") || qc.has_flag("manual")) c.flags.push_back("manual");
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<SubalgebraClass> extend_class(const LieAlgebra& g, const SubalgebraClass& s) {
  return extend_with(g, s, lattice_for(g));
}


const char* distinction_name(Distinction d) {
  switch (d) {
    case Distinction::DistinctBySignature: return "distinct-by-signature";
    case Distinction::DistinctByOrbit: return "distinct-by-orbit";
    case Distinction::PossiblyConjugate: return "possibly-conjugate";
  }
  return "?";
}

namespace {

GroupWord orbit_word(const LieAlgebra& g) {
  auto d = derived_series(g);
  Element x0 = d.size() > 1 && d[1].dim() > 0 ? d[1].basis_vectors().front() : g.basis_element(0);
  return normalizer_chain_factorization(g, x0);
}

struct OrbitSystem {
  std::vector<Scalar> eqs;
  Conditions assume;
  std::map<std::string, Scalar> solved;
  std::vector<std::string> times, units, circles;
  std::map<std::string, Scalar> circle_square;  // c -> value of c^2
  std::map<std::string, std::pair<long, Scalar>> unit_powers;  // u -> (k, value of u^k)
};

std::optional<Rational> rational_root(const Rational& v, long k) {
  if (sgn(v) <= 0) return std::nullopt;
  mpz_class n, d;
  if (!mpz_root(n.get_mpz_t(), v.get_num().get_mpz_t(), static_cast<unsigned long>(k))) return std::nullopt;
  if (!mpz_root(d.get_mpz_t(), v.get_den().get_mpz_t(), static_cast<unsigned long>(k))) return std::nullopt;
  return Rational(n, d);
}

std::optional<Scalar> replace_power(const Scalar& x, const std::string& u, long k, const Scalar& v) {
  auto co = x.coefficients_in(u);
  if (!co) return std::nullopt;
  Scalar out(0);
  for (std::size_t i = 0; i < co->size(); ++i) {
    if ((*co)[i].is_zero()) continue;
    if (i % static_cast<std::size_t>(k) != 0) return std::nullopt;
    out = out + (*co)[i] * v.pow(static_cast<int>(i / static_cast<std::size_t>(k)));
  }
  return out;
}

enum class SolveResult { Contradiction, Done, Stuck };

Scalar rebuild(const std::vector<Scalar>& co, const std::string& name, std::size_t shift) {
  Scalar out(0), x = Scalar::param(name);
  for (std::size_t i = shift; i < co.size(); ++i) out = out + co[i] * x.pow(static_cast<int>(i - shift));
  return out;
}

Scalar tidy(const Scalar& e, const OrbitSystem& sys) {
  Scalar x = Scalar(e.substitute(sys.solved).numerator());
  for (const auto& [c, sq] : sys.circle_square) {
    auto co = x.coefficients_in(c);
    if (!co || co->size() < 3) continue;
    Scalar out(0), cv = Scalar::param(c);
    for (std::size_t i = 0; i < co->size(); ++i)
      out = out + (*co)[i] * sq.pow(static_cast<int>(i / 2)) * (i % 2 ? cv : Scalar(1));
    x = Scalar(out.numerator());
  }
  for (const auto& u : sys.units) {
    auto co = x.coefficients_in(u);
    if (!co || co->size() < 2) continue;
    std::size_t k = 0;
    while (k < co->size() && (*co)[k].is_zero()) ++k;
    if (k > 0 && k < co->size()) x = Scalar(rebuild(*co, u, k).numerator());
  }
  for (const auto& [u, kv] : sys.unit_powers)
    if (auto r = replace_power(x, u, kv.first, kv.second)) x = Scalar(r->numerator());
  return x;
}

// Linear solve for name in e: e = a name + b with a entailed nonzero.
std::optional<Scalar> linear_root(const Scalar& e, const std::string& name, const Conditions& assume) {
  auto co = e.coefficients_in(name);
  if (!co || co->size() != 2 || !entails_nonzero((*co)[1], assume)) return std::nullopt;
  return -(*co)[0] / (*co)[1];
}

SolveResult solve_orbit(OrbitSystem& sys, std::string& reason) {
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<Scalar> live;
    for (const auto& e : sys.eqs) {
      Scalar x = tidy(e, sys);
      if (x.is_zero()) continue;
      if (entails_nonzero(x, sys.assume)) {
        reason = "orbit equation " + x.to_string() + " = 0 has no solution";
        return SolveResult::Contradiction;
      }
      live.push_back(x);
    }
    if (live.empty()) return SolveResult::Done;
    for (const auto& x : live)
      for (const auto& u : sys.units) {
        auto co = x.coefficients_in(u);
        if (!co || co->size() < 2) continue;
        std::size_t k = co->size() - 1, nz = 0;
        for (const auto& c : *co) nz += c.is_zero() ? 0 : 1;
        if (nz != 2 || (*co)[0].is_zero() || !entails_nonzero((*co)[k], sys.assume)) continue;
        Scalar v = -(*co)[0] / (*co)[k];
        Sign sg = Sign::Unknown;
        try {
          sg = sign_of(v, sys.assume);
        } catch (const Error&) {
        }
        if (sg == Sign::Negative || sg == Sign::Zero) {
          reason = u + "^" + std::to_string(k) + " = " + v.to_string() + " is not positive";
          return SolveResult::Contradiction;
        }
      }
    bool progress = false;
    auto try_names = [&](const std::vector<std::string>& names, bool unit) {
      for (const auto& x : live)
        for (const auto& n : names) {
          if (sys.solved.count(n)) continue;
          auto r = linear_root(x, n, sys.assume);
          if (!r) continue;
          if (unit) {
            Sign sg = Sign::Unknown;
            try {
              sg = sign_of(*r, sys.assume);
            } catch (const Error&) {
            }
            if (sg != Sign::Positive) continue;
          }
          sys.solved[n] = *r;
          for (auto& [k, v] : sys.solved) v = v.substitute(n, *r);
          return true;
        }
      return false;
    };
    // Two equations jointly linear in two times, with a determinant entailed nonzero.
    auto try_pairs = [&]() {
      std::vector<std::string> free;
      for (const auto& t : sys.times)
        if (!sys.solved.count(t)) free.push_back(t);
      struct Lin { Scalar a, b, c; };  // a ti + b tj + c
      for (std::size_t i = 0; i < free.size(); ++i)
        for (std::size_t j = i + 1; j < free.size(); ++j) {
          const std::string &ti = free[i], &tj = free[j];
          std::vector<Lin> lins;
          for (const auto& x : live) {
            Scalar c = x.substitute({{ti, Scalar(0)}, {tj, Scalar(0)}});
            Scalar a = x.substitute({{ti, Scalar(1)}, {tj, Scalar(0)}}) - c;
            Scalar b = x.substitute({{ti, Scalar(0)}, {tj, Scalar(1)}}) - c;
            if (a.depends_on(ti) || a.depends_on(tj) || b.depends_on(ti) || b.depends_on(tj)) continue;
            if (a * Scalar::param(ti) + b * Scalar::param(tj) + c != x) continue;
            lins.push_back({a, b, c});
          }
          for (std::size_t p = 0; p < lins.size(); ++p)
            for (std::size_t q = p + 1; q < lins.size(); ++q) {
              const Lin &e1 = lins[p], &e2 = lins[q];
              Scalar det = tidy(e1.a * e2.b - e1.b * e2.a, sys);
              if (!entails_nonzero(det, sys.assume)) continue;
              Scalar vi = tidy(e1.b * e2.c - e2.b * e1.c, sys) / det;
              Scalar vj = tidy(e2.a * e1.c - e1.a * e2.c, sys) / det;
              sys.solved[ti] = vi;
              sys.solved[tj] = vj;
              for (auto& [k, v] : sys.solved) v = v.substitute({{ti, vi}, {tj, vj}});
              return true;
            }
        }
      return false;
    };
    // u^k = v with v > 0 has a real solution; usable when every power of u is a multiple of k.
    auto try_powers = [&]() {
      for (const auto& x : live)
        for (const auto& u : sys.units) {
          if (sys.solved.count(u) || sys.unit_powers.count(u)) continue;
          auto co = x.coefficients_in(u);
          if (!co || co->size() < 3) continue;
          long k = static_cast<long>(co->size()) - 1;
          bool two = true;
          for (long i = 1; i < k; ++i) two = two && (*co)[i].is_zero();
          if (!two || (*co)[0].is_zero() || !entails_nonzero((*co)[k], sys.assume)) continue;
          Scalar v = -(*co)[0] / (*co)[k];
          Sign sg = Sign::Unknown;
          try {
            sg = sign_of(v, sys.assume);
          } catch (const Error&) {
          }
          if (sg != Sign::Positive) continue;
          bool all = true;
          for (const auto& y : live) all = all && replace_power(y, u, k, v).has_value();
          if (!all) continue;
          if (v.is_rational())
            if (auto r = rational_root(v.rational_value(), k)) {
              sys.solved[u] = Scalar(*r);
              for (auto& [name, val] : sys.solved) val = val.substitute(u, Scalar(*r));
              return true;
            }
          sys.unit_powers[u] = {k, v};
          return true;
        }
      return false;
    };
    progress = try_names(sys.times, false) || try_pairs() || try_names(sys.units, true) ||
               try_names(sys.circles, false) || try_powers();
    if (!progress) {
      reason = "orbit equations not solved: ";
      for (std::size_t i = 0; i < live.size() && i < 3; ++i) reason += (i ? ", " : "") + live[i].to_string();
      return SolveResult::Stuck;
    }
  }
  reason = "orbit solve iteration limit";
  return SolveResult::Stuck;
}

struct OrbitSetup {
  OrbitSystem sys;
  GroupWord word;
  std::string blocked;
};

OrbitSetup setup_orbit(const LieAlgebra& g, const Subspace& a, const Subspace& b, const Conditions& assumptions) {
  OrbitSetup out;
  try {
    out.word = orbit_word(g);
  } catch (const Error& e) {
    out.blocked = e.what();
    return out;
  }
  OrbitSystem& sys = out.sys;
  sys.assume = assumptions;
  for (const auto& c : a.constraints()) sys.assume.push_back(c);
  for (const auto& c : b.constraints()) sys.assume.push_back(c);
  for (const auto& f : out.word.factors) {
    if (f.kind == FlowGenerator::Kind::Mixed && !f.flowable) {
      out.blocked = "blocked generator: " + f.obstruction;
      return out;
    }
    if (f.kind == FlowGenerator::Kind::Unipotent || f.kind == FlowGenerator::Kind::Mixed) sys.times.push_back(f.time);
    if (f.kind != FlowGenerator::Kind::Unipotent) sys.units.push_back(f.unit_symbol());
    if (f.kind == FlowGenerator::Kind::Rotation) {
      sys.circles.push_back(f.cos_symbol());
      sys.circles.push_back(f.sin_symbol());
    }
    for (const auto& c : f.relations()) {
      if (c.rel == Condition::Rel::Zero) {
        sys.eqs.push_back(c.exprs[0]);
        auto co = c.exprs[0].coefficients_in(f.cos_symbol());
        if (co && co->size() == 3) sys.circle_square[f.cos_symbol()] = -(*co)[0] / (*co)[2];
      } else {
        sys.assume.push_back(c);
      }
    }
  }
  Multivector pa = out.word.apply(a.basis_vectors());
  Multivector pb = Multivector::wedge(g.dim(), b.basis_vectors());
  std::optional<std::vector<std::size_t>> j0;
  for (const auto& [k, v] : pb.coords)
    if (v.is_constant()) {
      j0 = k;
      break;
    }
  if (!j0) {
    out.blocked = "no constant Plucker coordinate";
    return out;
  }
  std::set<std::vector<std::size_t>> keys;
  for (const auto& [k, v] : pa.coords) keys.insert(k);
  for (const auto& [k, v] : pb.coords) keys.insert(k);
  Scalar a0 = pa.coefficient(*j0), b0 = pb.coefficient(*j0);
  for (const auto& k : keys) sys.eqs.push_back(pa.coefficient(k) * b0 - a0 * pb.coefficient(k));
  return out;
}

}  // namespace

DistinctionResult distinguish_by_orbit(const LieAlgebra& g, const Subspace& a, const Subspace& b,
                                       const Conditions& assumptions) {
  if (a.dim() != b.dim()) return {Distinction::DistinctBySignature, "dimensions differ"};
  OrbitSetup st = setup_orbit(g, a, b, assumptions);
  if (!st.blocked.empty()) return {Distinction::PossiblyConjugate, st.blocked};
  std::string reason;
  switch (solve_orbit(st.sys, reason)) {
    case SolveResult::Contradiction:
      return {Distinction::DistinctByOrbit, "under " + st.word.to_string(g) + ": " + reason};
    case SolveResult::Done:
      return {Distinction::PossiblyConjugate, "orbit equations are solvable"};
    case SolveResult::Stuck:
      break;
  }
  return {Distinction::PossiblyConjugate, reason};
}

std::optional<std::map<std::string, Scalar>> find_conjugator(const LieAlgebra& g, const Subspace& a,
                                                             const Subspace& b) {
  if (a.dim() != b.dim()) return std::nullopt;
  OrbitSetup st = setup_orbit(g, a, b, {});
  if (!st.blocked.empty()) return std::nullopt;
  std::string reason;
  if (solve_orbit(st.sys, reason) != SolveResult::Done) return std::nullopt;
  std::map<std::string, Scalar> rest;
  for (const auto& f : st.word.factors)
    for (const auto& [k, v] : f.at_time_zero())
      if (!st.sys.solved.count(k)) rest[k] = v;
  for (const auto& [u, kv] : st.sys.unit_powers) rest.erase(u);
  std::map<std::string, Scalar> all;
  for (const auto& [k, v] : st.sys.solved) all[k] = v.substitute(rest);
  for (const auto& [k, v] : rest) all[k] = v;
  for (const auto& [k, v] : all)
    if (!entails_nonzero(Scalar(v.denominator()), st.sys.assume)) return std::nullopt;
  OrbitSystem check = st.sys;
  check.solved = all;
  for (const auto& e : st.sys.eqs)
    if (!tidy(e, check).is_zero()) return std::nullopt;
  for (const auto& u : st.sys.units) {
    if (st.sys.unit_powers.count(u)) continue;
    Sign sg = Sign::Unknown;
    try {
      sg = sign_of(all.at(u), st.sys.assume);
    } catch (const Error&) {
    }
    if (sg != Sign::Positive) return std::nullopt;
  }
  for (auto it = all.begin(); it != all.end();) {
    bool used = false;
    for (const auto& f : st.word.factors)
      if ((it->first == f.time && (f.kind == FlowGenerator::Kind::Unipotent || f.kind == FlowGenerator::Kind::Mixed)) ||
          (f.kind != FlowGenerator::Kind::Unipotent && it->first == f.unit_symbol()) ||
          (f.kind == FlowGenerator::Kind::Rotation && (it->first == f.cos_symbol() || it->first == f.sin_symbol())))
        used = true;
    it = used ? std::next(it) : all.erase(it);
  }
  for (const auto& [u, kv] : st.sys.unit_powers) all[u + "^" + std::to_string(kv.first)] = kv.second;
  return all;
}

namespace {

// Copy of c with labels renamed away from `avoid`.
SubalgebraClass renamed_apart(const SubalgebraClass& c, const std::set<std::string>& avoid) {
  std::set<std::string> used = avoid;
  for (const auto& l : c.labels) used.insert(l);
  ParamPool pool(std::vector<std::string>(used.begin(), used.end()));
  std::map<std::string, Scalar> ren;
  for (const auto& l : c.labels)
    if (avoid.count(l)) ren[l] = Scalar::param(pool.fresh());
  if (ren.empty()) return c;
  SubalgebraClass out = c;
  for (auto& l : out.labels)
    if (ren.count(l)) l = ren.at(l).to_string();
  out.constraints.clear();
  for (auto cond : c.constraints) {
    for (auto& e : cond.exprs) e = e.substitute(ren);
    out.constraints.push_back(cond);
  }
  out.constraints = canonical_conditions(out.constraints);
  out.representative = Subspace::span(c.representative.ambient_dim(), c.representative.substitute(ren).basis_vectors(),
                                      out.constraints);
  out.representative.add_constraints(out.constraints);
  return out;
}

}  // namespace

DistinctionResult distinguish(const LieAlgebra& g, const SubalgebraClass& a, const SubalgebraClass& b) {
  if (a.dim != b.dim) return {Distinction::DistinctBySignature, "dimensions differ"};
  if (a.signature != b.signature)
    return {Distinction::DistinctBySignature, a.signature.to_string() + " vs " + b.signature.to_string()};
  if (a.key() == b.key()) return {Distinction::PossiblyConjugate, "same class"};
  std::set<std::string> avoid(a.labels.begin(), a.labels.end());
  SubalgebraClass bb = renamed_apart(b, avoid);
  Conditions assume = a.constraints;
  assume.insert(assume.end(), bb.constraints.begin(), bb.constraints.end());
  return distinguish_by_orbit(g, a.representative, bb.representative, assume);
}


namespace {

std::string assignment_to_string(const std::map<std::string, Scalar>& m) {
  std::string out;
  for (const auto& [k, v] : m) {
    if (!out.empty()) out += ", ";
    out += k + " = " + v.to_string();
  }
  return out;
}

// Varies one label at a time and asks whether the orbit separates the values.
bool moduli_verified(const LieAlgebra& g, const SubalgebraClass& c) {
  for (const auto& l : c.labels) {
    std::set<std::string> avoid(c.labels.begin(), c.labels.end());
    SubalgebraClass other = renamed_apart(c, {l});
    std::string l2;
    for (const auto& x : other.labels)
      if (!avoid.count(x)) l2 = x;
    Conditions assume = c.constraints;
    assume.insert(assume.end(), other.constraints.begin(), other.constraints.end());
    assume.push_back(Condition::nonzero(Scalar::param(l) - Scalar::param(l2)));
    if (distinguish_by_orbit(g, c.representative, other.representative, assume).kind != Distinction::DistinctByOrbit)
      return false;
  }
  return true;
}

}  // namespace

Classification classify_all(const LieAlgebra& g, std::optional<std::size_t> max_dim) {
  require_solvable(g);
  const std::size_t top = std::min(max_dim.value_or(g.dim()), g.dim());
  IdealLattice lattice = lattice_for(g);
  Classification out;
  out.by_dim.resize(top + 1);
  if (top >= 1) out.by_dim[1] = classify_1d_with(g, lattice);

  for (std::size_t d = 2; d <= top; ++d) {
    std::vector<SubalgebraClass> level;
    std::map<std::string, std::size_t> index;
    for (auto& parent : out.by_dim[d - 1]) {
      std::vector<SubalgebraClass> ext;
      try {
        ext = extend_with(g, parent, lattice);
      } catch (const Error& e) {
        if (!parent.has_flag("manual")) parent.flags.push_back("manual");
        parent.trace.note += (parent.trace.note.empty() ? "" : "; ") + std::string("extension failed: ") + e.what();
        continue;
      }
      for (auto& c : ext) {
        auto it = index.find(c.key());
        if (it != index.end()) {
          auto& prev = level[it->second].provenance;
          prev.insert(prev.end(), c.provenance.begin(), c.provenance.end());
          continue;
        }
        index[c.key()] = level.size();
        level.push_back(c);
      }
    }
    std::stable_sort(level.begin(), level.end(), class_less);

    std::vector<SubalgebraClass> kept;
    for (auto& c : level) {
      bool dup = false;
      for (const auto& k : kept) {
        if (k.signature != c.signature || !k.labels.empty()) continue;
        if (auto conj = find_conjugator(g, k.representative, c.representative)) {
          out.merged.push_back(subspace_to_string(g, c.representative) + " is conjugate to " +
                               subspace_to_string(g, k.representative) + " via " + assignment_to_string(*conj) +
                               (c.labels.empty() ? "" : " for every label value"));
          dup = true;
          break;
        }
      }
      if (!dup) kept.push_back(c);
    }
    out.by_dim[d] = kept;
  }

  for (std::size_t d = 1; d <= top; ++d) {
    auto& cls = out.by_dim[d];
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        DistinctionResult r = distinguish(g, cls[i], cls[j]);
        if (r.kind == Distinction::PossiblyConjugate) {
          for (auto* c : {&cls[i], &cls[j]})
            if (!c->has_flag("possibly-conjugate")) c->flags.push_back("possibly-conjugate");
        }
        out.certificates.push_back({d, i, j, r});
      }
    for (auto& c : cls)
      if (!c.labels.empty() && !moduli_verified(g, c)) c.flags.push_back("moduli-unverified");
  }
  return out;
}


std::pair<Element, ReductionTrace> align_with_torus(const LieAlgebra& g, const Subspace& t_part,
                                                    const Subspace& n_ideal, const Element& x) {
  const std::size_t n = g.dim();
  if (t_part.dim() + n_ideal.dim() != n || (t_part + n_ideal).dim() != n)
    throw Error(ErrorKind::AmbientMismatch, "torus and nilpotent ideal do not split the algebra");
  auto tb = t_part.basis_vectors();
  std::vector<Matrix> family;
  for (const auto& t : tb) family.push_back(adjoint_matrix(g, t));
  auto spaces = simultaneous_eigenspaces(family, n_ideal);
  std::size_t total = 0;
  for (const auto& e : spaces) {
    total += e.space.dim();
    for (const auto& w : e.weight)
      if (!w.is_rational()) throw Error(ErrorKind::NonRationalWeights, "torus weight " + w.to_string());
  }
  if (total != n_ideal.dim())
    throw Error(ErrorKind::NonDiagonalizableTorus, "ad of the torus is not diagonalizable on the ideal");

  // Columns: torus basis, then the weight vectors.
  std::vector<Vec> cols = tb;
  std::vector<std::size_t> owner;
  for (std::size_t k = 0; k < spaces.size(); ++k)
    for (const auto& v : spaces[k].space.basis_vectors()) {
      cols.push_back(v);
      owner.push_back(k);
    }
  Matrix inv = Matrix::from_columns(cols, n).inverse();

  ReductionTrace trace;
  trace.input = x;
  Element cur = x;
  for (std::size_t iter = 0; iter <= n; ++iter) {
    Vec c = inv * cur;
    Scalar zero(0);
    std::vector<Scalar> lambda(spaces.size(), zero);
    for (std::size_t k = 0; k < spaces.size(); ++k)
      for (std::size_t i = 0; i < tb.size(); ++i) lambda[k] = lambda[k] + c[i] * spaces[k].weight[i];
    Element w(n, zero);
    bool any = false;
    for (std::size_t j = 0; j < owner.size(); ++j) {
      const Scalar& coef = c[tb.size() + j];
      if (coef.is_zero() || lambda[owner[j]].is_zero()) continue;
      if (!entails_nonzero(lambda[owner[j]], trace.case_splits)) {
        trace.manual = true;
        trace.note = "weight " + lambda[owner[j]].to_string() + " may vanish";
        continue;
      }
      w = w + (coef / lambda[owner[j]]) * cols[tb.size() + j];
      any = true;
    }
    if (!any) return {cur, trace};
    const std::string time = "t" + std::to_string(trace.steps.size() + 1);
    ReductionStep st;
    st.kind = ReductionStep::Kind::Align;
    st.generators = {w};
    st.times = {time};
    st.times_solved = {{time, Scalar(1)}};
    st.before = cur;
    cur = substitute(flow_apply(classify_generator(g, w, time), cur), st.times_solved);
    st.after = cur;
    trace.steps.push_back(st);
  }
  trace.manual = true;
  trace.note = "alignment did not terminate";
  return {cur, trace};
}


namespace {

bool holds(const Condition& c, const std::map<std::string, Scalar>& at) {
  std::vector<Scalar> vals;
  for (const auto& e : c.exprs) {
    Scalar v = e.substitute(at);
    if (!v.is_constant()) return false;
    vals.push_back(v);
  }
  switch (c.rel) {
    case Condition::Rel::NonZero: return !vals[0].is_zero();
    case Condition::Rel::Zero: return vals[0].is_zero();
    case Condition::Rel::Positive: return sign_of(vals[0]) == Sign::Positive;
    case Condition::Rel::Negative: return sign_of(vals[0]) == Sign::Negative;
    case Condition::Rel::NotAllZero:
      return std::any_of(vals.begin(), vals.end(), [](const Scalar& x) { return !x.is_zero(); });
  }
  return false;
}

}  // namespace

std::optional<std::map<std::string, Scalar>> match_line(const Vec& pattern, const Conditions& cs, const Vec& v) {
  std::optional<std::size_t> anchor;
  for (std::size_t i = 0; i < pattern.size() && !anchor; ++i)
    if (pattern[i].is_constant() && !pattern[i].is_zero()) anchor = i;
  if (!anchor || v[*anchor].is_zero()) return std::nullopt;
  Scalar lambda = v[*anchor] / pattern[*anchor];
  std::vector<Scalar> eqs;
  for (std::size_t i = 0; i < pattern.size(); ++i) eqs.push_back(lambda * pattern[i] - v[i]);
  std::map<std::string, Scalar> at;
  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& e : eqs) {
      Scalar x = e.substitute(at);
      if (x.is_constant()) continue;
      for (const auto& p : x.params()) {
        auto co = x.coefficients_in(p);
        if (co && co->size() == 2 && (*co)[1].is_constant() && (*co)[0].is_constant()) {
          at[p] = -(*co)[0] / (*co)[1];
          progress = true;
          break;
        }
      }
    }
  }
  for (const auto& e : eqs)
    if (!e.substitute(at).is_zero()) return std::nullopt;
  for (const auto& c : cs)
    if (!holds(c, at)) return std::nullopt;
  return at;
}

std::optional<std::size_t> locate_line(const LieAlgebra& g, const std::vector<CandidateForm>& forms,
                                       const std::vector<SubalgebraClass>& classes, const Element& v) {
  for (const auto& form : forms) {
    auto at = match_line(form.element, form.constraints, v);
    if (!at) continue;
    CandidateForm concrete{v, form.shape, {}};
    auto reduced = reduce_with(g, concrete, nullptr);
    if (reduced.size() != 1) return std::nullopt;
    Vec r = reduced.front().first.representative.basis_vectors().front();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].dim != 1) continue;
      if (match_line(classes[i].representative.basis_vectors().front(), classes[i].constraints, r)) return i;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace solvlie
