#include "solvlie/ideals.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "solvlie/errors.hpp"

namespace solvlie {

std::string ParamPool::fresh() {
  static const char* names[] = {"k", "l", "m", "n", "p", "q", "r", "s", "a", "b", "c", "d", "u", "v", "w", "z"};
  constexpr std::size_t count = sizeof(names) / sizeof(names[0]);
  while (true) {
    std::size_t i = next_++;
    std::string name = i < count ? names[i] : names[i % count] + std::to_string(i / count);
    if (used_.insert(name).second) return name;
  }
}

// ---------------------------------------------------------------- strata

Subspace IdealStratum::envelope() const {
  if (free_dim == 0) return base;
  return base + free_space;
}

namespace {

// Rename parameters in order of first appearance so equal families compare equal.
std::string canonical_text(const std::string& text, const std::vector<std::string>& order) {
  std::string out = text;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::string from = order[i], to = "$" + std::to_string(i);
    std::string res;
    std::size_t pos = 0;
    while (pos < out.size()) {
      bool boundary_before = pos == 0 || !(std::isalnum(static_cast<unsigned char>(out[pos - 1])) || out[pos - 1] == '_');
      if (boundary_before && out.compare(pos, from.size(), from) == 0) {
        std::size_t end = pos + from.size();
        bool boundary_after = end >= out.size() || !(std::isalnum(static_cast<unsigned char>(out[end])) || out[end] == '_');
        if (boundary_after) {
          res += to;
          pos = end;
          continue;
        }
      }
      res += out[pos++];
    }
    out = res;
  }
  return out;
}

std::vector<std::string> param_order(const IdealStratum& s) {
  std::vector<std::string> order;
  auto visit = [&](const Subspace& sp) {
    for (const auto& row : sp.basis_vectors())
      for (const auto& x : row)
        for (const auto& p : x.params())
          if (std::find(order.begin(), order.end(), p) == order.end()) order.push_back(p);
  };
  visit(s.base);
  visit(s.free_space);
  for (const auto& c : s.constraints)
    for (const auto& p : c.params())
      if (std::find(order.begin(), order.end(), p) == order.end()) order.push_back(p);
  return order;
}

}  // namespace

std::string IdealStratum::key() const {
  std::string raw = base.key() + "#" + (free_dim ? free_space.key() : std::string("-")) + "#" + std::to_string(free_dim) +
                    "#" + to_string(constraints);
  return canonical_text(raw, param_order(*this));
}

IdealStratum concrete_stratum(const Subspace& s) {
  IdealStratum st;
  st.base = s;
  st.free_space = Subspace(s.ambient_dim());
  return st;
}

IdealStratum canonical_stratum(IdealStratum s) {
  const std::size_t n = s.base.ambient_dim();
  if (s.free_dim == 0) {
    s.free_space = Subspace(n);
  } else {
    std::vector<Vec> reduced;
    for (const auto& v : s.free_space.basis_vectors()) reduced.push_back(s.base.reduce(v));
    s.free_space = Subspace::span(n, reduced, s.base.constraints());
    if (s.free_dim >= s.free_space.dim()) {
      s.base = s.base + s.free_space;
      s.free_dim = 0;
      s.free_space = Subspace(n);
    }
  }
  s.constraints = canonical_conditions(s.constraints);
  s.nested = !s.base.params().empty();
  return s;
}

std::vector<const IdealStratum*> IdealLattice::of_dim(std::size_t d) const {
  std::vector<const IdealStratum*> out;
  for (const auto& s : strata)
    if (s.dim() == d) out.push_back(&s);
  return out;
}

std::vector<const IdealStratum*> IdealLattice::proper() const {
  std::vector<const IdealStratum*> out;
  if (strata.empty()) return out;
  std::size_t n = strata.front().base.ambient_dim();
  for (const auto& s : strata)
    if (s.dim() > 0 && s.dim() < n) out.push_back(&s);
  return out;
}

// ---------------------------------------------------------------- cells

std::vector<std::vector<Vec>> schubert_cells(const std::vector<Vec>& vectors, std::size_t k, ParamPool& pool) {
  const std::size_t m = vectors.size();
  std::vector<std::vector<Vec>> out;
  if (k > m) return out;
  if (k == 0) return {{}};
  const std::size_t n = vectors.front().size();
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < k; ++i) {
      Vec row = zero_vec(n);
      row = row + vectors[piv[i]];
      for (std::size_t j = piv[i] + 1; j < m; ++j) {
        if (std::find(piv.begin(), piv.end(), j) != piv.end()) continue;
        row = row + Scalar::param(pool.fresh()) * vectors[j];
      }
      rows.push_back(row);
    }
    out.push_back(rows);
    // next combination
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

std::vector<Subspace> expand_charts(const IdealStratum& s, ParamPool& pool) {
  if (s.free_dim == 0) return {s.base};
  std::vector<Subspace> out;
  pool.reserve(s.base.params());
  for (const auto& cell : schubert_cells(s.free_space.basis_vectors(), s.free_dim, pool)) {
    auto rows = s.base.basis_vectors();
    rows.insert(rows.end(), cell.begin(), cell.end());
    out.push_back(Subspace::span(s.base.ambient_dim(), rows, s.constraints));
  }
  return out;
}

Subspace instantiate(const IdealStratum& s, const std::vector<Vec>& free_rows) {
  auto rows = s.base.basis_vectors();
  rows.insert(rows.end(), free_rows.begin(), free_rows.end());
  return Subspace::span(s.base.ambient_dim(), rows);
}

// ---------------------------------------------------------------- enumeration

std::vector<IdealStratum> one_dim_ideals(const LieAlgebra& g) {
  require_solvable(g);
  const std::size_t n = g.dim();
  std::vector<IdealStratum> out;
  Subspace z = center(g);
  if (z.dim() == 1) {
    IdealStratum s = concrete_stratum(z);
    s.provenance.push_back("center");
    out.push_back(s);
  } else if (z.dim() >= 2) {
    IdealStratum s = concrete_stratum(Subspace(n));
    s.free_space = z;
    s.free_dim = 1;
    s.provenance.push_back("line in center");
    out.push_back(s);
  }
  auto ds = derived_series(g);
  Subspace d = ds.size() > 1 ? ds[1] : Subspace(n);
  if (d.dim() == 0) return out;
  Subspace zd = centralizer(g, d).intersect(d);
  auto comp = (d + z).complement_vectors();
  if (zd.dim() == 0 || comp.empty()) return out;
  std::vector<Matrix> family;
  for (const auto& c : comp) family.push_back(adjoint_matrix(g, c));
  for (const auto& e : simultaneous_eigenspaces(family, zd)) {
    if (std::all_of(e.weight.begin(), e.weight.end(), [](const Scalar& w) { return w.is_zero(); })) continue;
    std::string w = "weight (";
    for (std::size_t i = 0; i < e.weight.size(); ++i) w += (i ? ", " : "") + e.weight[i].to_string();
    w += ")";
    if (e.space.dim() == 1) {
      IdealStratum s = concrete_stratum(e.space);
      s.provenance.push_back("eigenline " + w);
      out.push_back(s);
    } else {
      IdealStratum s = concrete_stratum(Subspace(n));
      s.free_space = e.space;
      s.free_dim = 1;
      s.provenance.push_back("line in eigenspace " + w);
      out.push_back(s);
    }
  }
  return out;
}

namespace {

std::vector<IdealStratum> lines_over(const LieAlgebra& g, const Subspace& ideal) {
  QuotientMap q = quotient(g, ideal);
  std::vector<IdealStratum> lines;
  try {
    lines = one_dim_ideals(q.target);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParameterizedEntriesUnsupported)
      throw Error(ErrorKind::ParameterizedQuotientUnsupported,
                  "eigenvalues of the quotient by " + ideal.to_string() + " depend on parameters");
    throw;
  }
  std::vector<IdealStratum> out;
  for (const auto& l : lines) {
    IdealStratum s;
    s.base = q.pullback(l.base);
    std::vector<Vec> w;
    for (const auto& v : l.free_space.basis_vectors()) w.push_back(q.lift(v));
    s.free_space = Subspace::span(g.dim(), w);
    s.free_dim = l.free_dim;
    s.constraints = ideal.constraints();
    s.provenance = l.provenance;
    out.push_back(s);
  }
  return out;
}

bool is_instance_of(const IdealStratum& c, const IdealStratum& f) {
  if (f.free_dim == 0 || c.dim() != f.dim()) return false;
  if (!f.base.is_parameter_free() || !f.free_space.is_parameter_free()) return false;
  return c.base.contains(f.base) && f.envelope().contains(c.envelope());
}

std::vector<IdealStratum> dedup(const std::vector<IdealStratum>& in) {
  std::vector<IdealStratum> canon;
  std::set<std::string> seen;
  for (const auto& s : in) {
    IdealStratum c = canonical_stratum(s);
    if (seen.insert(c.key()).second) canon.push_back(c);
  }
  std::vector<IdealStratum> out;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < canon.size() && !covered; ++j)
      if (i != j && canon[i].free_dim < canon[j].free_dim) covered = is_instance_of(canon[i], canon[j]);
    if (!covered) out.push_back(canon[i]);
  }
  return out;
}

std::vector<std::size_t> pivots_of(const IdealStratum& s) {
  auto p = s.base.pivots();
  for (auto x : s.free_space.pivots()) p.push_back(x + 1000);
  return p;
}

void sort_strata(std::vector<IdealStratum>& v) {
  std::stable_sort(v.begin(), v.end(), [](const IdealStratum& a, const IdealStratum& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.free_dim != b.free_dim) return a.free_dim > b.free_dim;
    auto pa = pivots_of(a), pb = pivots_of(b);
    if (pa != pb) return pa < pb;
    return a.key() < b.key();
  });
}

void compute_edges(IdealLattice& l) {
  l.edges.clear();
  for (std::size_t i = 0; i < l.strata.size(); ++i)
    for (std::size_t j = 0; j < l.strata.size(); ++j) {
      const auto& a = l.strata[i];
      const auto& b = l.strata[j];
      if (a.dim() >= b.dim()) continue;
      if (!b.envelope().contains(a.base)) continue;
      bool every = b.base.contains(a.envelope());
      l.edges.push_back({i, j, every});
    }
}

}  // namespace

std::vector<IdealStratum> extend_ideals(const LieAlgebra& g, const std::vector<IdealStratum>& known, ParamPool& pool) {
  std::vector<IdealStratum> out;
  for (const auto& s : known) {
    pool.reserve(s.base.params());
    const std::string parent = s.key();
    if (s.free_dim == 0) {
      for (auto j : lines_over(g, s.base)) {
        j.parent = parent;
        j.provenance.insert(j.provenance.begin(), s.provenance.begin(), s.provenance.end());
        j.nested = s.nested;
        out.push_back(j);
      }
      continue;
    }
    if (s.free_dim + 1 <= s.free_space.dim()) {
      IdealStratum a = s;
      ++a.free_dim;
      a.parent = parent;
      a.provenance.push_back("larger free choice");
      out.push_back(a);
    }
    Subspace env = s.envelope();
    for (const auto& cell : schubert_cells(s.free_space.basis_vectors(), s.free_dim, pool)) {
      auto rows = s.base.basis_vectors();
      rows.insert(rows.end(), cell.begin(), cell.end());
      Subspace member = Subspace::span(g.dim(), rows, s.constraints);
      for (auto j : lines_over(g, member)) {
        if (env.contains(j.envelope())) continue;
        j.parent = parent;
        j.provenance.insert(j.provenance.begin(), s.provenance.begin(), s.provenance.end());
        j.provenance.push_back("over a generic member (depth > 1)");
        j.nested = true;
        out.push_back(j);
      }
    }
  }
  return dedup(out);
}

IdealLattice enumerate_ideals(const LieAlgebra& g, std::optional<std::size_t> max_dim) {
  require_solvable(g);
  const std::size_t n = g.dim();
  const std::size_t top = std::min(max_dim.value_or(n), n);
  IdealLattice lat;
  ParamPool pool(g.labels());
  IdealStratum zero = concrete_stratum(Subspace(n));
  zero.provenance.push_back("zero");
  lat.strata.push_back(zero);
  std::vector<IdealStratum> level;
  if (n > 1 && top >= 1) level = dedup(one_dim_ideals(g));
  for (std::size_t d = 1; d < n && d <= top; ++d) {
    sort_strata(level);
    lat.strata.insert(lat.strata.end(), level.begin(), level.end());
    if (d + 1 < n && d + 1 <= top) level = extend_ideals(g, level, pool);
  }
  IdealStratum all = concrete_stratum(Subspace::full(n));
  all.provenance.push_back("whole algebra");
  if (n > 0) lat.strata.push_back(all);
  compute_edges(lat);
  return lat;
}

namespace {

bool is_real_space(const Subspace& s) {
  for (const auto& row : s.basis_vectors())
    for (const auto& x : row)
      if (x.radicand() < 0) return false;
  return true;
}

}  // namespace

IdealLattice enumerate_ideals_real(const LieAlgebra& g, std::optional<std::size_t> max_dim) {
  LieAlgebra gc = complexify(g);
  IdealLattice complex_lat = enumerate_ideals(gc, max_dim);
  const std::size_t n = g.dim();
  std::map<std::string, const IdealStratum*> by_key;
  for (const auto& s : complex_lat.strata) by_key[s.key()] = &s;

  IdealLattice lat;
  std::vector<IdealStratum> cands;
  auto realize = [&](const Subspace& s) { return real_points(gc, s + s.conjugate()); };
  for (const auto& j : complex_lat.strata) {
    if (j.free_dim == 0 && j.base.is_parameter_free()) {
      Subspace r1 = real_points(gc, j.base);
      Subspace r2 = realize(j.base);
      for (const auto& r : {r1, r2}) {
        IdealStratum c = concrete_stratum(r);
        c.provenance = j.provenance;
        c.provenance.push_back("real points");
        cands.push_back(c);
      }
      if (!j.parent.empty() && by_key.count(j.parent)) {
        const IdealStratum* p = by_key[j.parent];
        if (p->free_dim == 0 && p->base.is_parameter_free())
          lat.real_jumps.push_back(static_cast<int>(r2.dim()) - static_cast<int>(realize(p->base).dim()));
      }
    } else if (is_real_space(j.base) && is_real_space(j.free_space) && j.base.is_parameter_free()) {
      cands.push_back(j);
    } else {
      for (const auto& sp : {j.base, j.envelope()}) {
        if (!sp.is_parameter_free()) continue;
        cands.push_back(concrete_stratum(real_points(gc, sp)));
        cands.push_back(concrete_stratum(realize(sp)));
      }
    }
  }
  std::vector<IdealStratum> verified;
  ParamPool pool(g.labels());
  for (auto& c : cands) {
    if (max_dim && c.dim() > *max_dim && c.dim() != n) continue;
    bool ok;
    if (c.free_dim == 0) {
      ok = static_cast<bool>(is_ideal(g, c.base));
    } else {
      auto cells = expand_charts(c, pool);
      ok = static_cast<bool>(is_ideal(g, cells.front()));
    }
    if (!ok) throw Error(ErrorKind::Internal, "real points of a complex ideal failed the ideal test");
    verified.push_back(c);
  }
  lat.strata = dedup(verified);
  sort_strata(lat.strata);
  compute_edges(lat);
  return lat;
}

// ---------------------------------------------------------------- shapes

namespace {

bool member(const Subspace& s, const Element& x, const Conditions& as) {
  Vec r = s.reduce(x);
  if (is_zero(r)) return true;
  for (const auto& e : r)
    if (!e.is_zero() && entails_nonzero(e, as)) return false;
  throw Error(ErrorKind::AmbiguousUnderConstraints,
              "membership of " + to_string(x) + " in " + s.to_string() + " depends on parameters");
}

}  // namespace

Subspace shape_of(const LieAlgebra& g, const Element& x, const IdealLattice& lattice, const Conditions& assumptions) {
  Subspace shape = Subspace::full(g.dim());
  for (const auto& s : lattice.strata) {
    if (!s.base.is_parameter_free() || !s.free_space.is_parameter_free()) continue;
    if (s.free_dim == 0) {
      if (member(s.base, x, assumptions)) shape = shape.intersect(s.base);
      continue;
    }
    Subspace env = s.envelope();
    if (!member(env, x, assumptions)) continue;
    if (member(s.base, x, assumptions)) {
      shape = shape.intersect(s.base);
    } else {
      Vec w = s.base.reduce(x);
      shape = shape.intersect(s.base + Subspace::span(g.dim(), {w}));
    }
  }
  return shape;
}

}  // namespace solvlie
