// Acceptance suite: one PASS/FAIL line per criterion. Always exits 0.

#include <chrono>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "solvlie/conjugacy.hpp"
#include "solvlie/errors.hpp"
#include "solvlie/finite_field.hpp"
#include "solvlie/io.hpp"

using namespace solvlie;

namespace {

LieAlgebra corpus(const std::string& name) {
  return parse_algebra_file(std::string(SOLVLIE_CORPUS_DIR) + "/" + name + ".alg");
}

const std::vector<std::string> kCorpus{"lemma2d",    "lemma3d",   "example41",   "remark41",
                                       "heisenberg", "example43", "maxsolv_rot", "maxsolv_borel"};

Subspace sub(const LieAlgebra& g, std::initializer_list<const char*> elems) {
  std::vector<Vec> vs;
  for (const char* e : elems) vs.push_back(parse_element_expr(g, e));
  return Subspace::span(g.dim(), vs);
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

using StringSet = std::set<std::string>;

std::string join(const StringSet& s) {
  std::string r = "{";
  for (const auto& x : s) r += (r.size() > 1 ? ", " : "") + x;
  return r + "}";
}

StringSet expected(const LieAlgebra& g, const std::vector<std::initializer_list<const char*>>& subs) {
  StringSet out;
  for (const auto& s : subs) out.insert(subspace_to_string(g, sub(g, s)));
  return out;
}

StringSet proper_ideals(const LieAlgebra& g, const IdealLattice& lat) {
  StringSet out;
  for (const auto* s : lat.proper()) {
    std::string t = subspace_to_string(g, s->base);
    if (s->free_dim) t += " + any line of " + subspace_to_string(g, s->free_space);
    out.insert(t);
  }
  return out;
}

StringSet class_set(const LieAlgebra& g, const std::vector<SubalgebraClass>& cs) {
  StringSet out;
  for (const auto& c : cs) out.insert(subspace_to_string(g, c.representative));
  return out;
}

void same_set(Outcome& o, const std::string& what, const StringSet& got, const StringSet& want) {
  o.require(got == want, what + ": got " + join(got) + ", expected " + join(want));
}

Vec random_vec(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  for (;;) {
    Vec v(n, Scalar(0));
    bool nz = false;
    for (auto& x : v) {
      x = Scalar(Rational(num(rng), den(rng)));
      nz = nz || !x.is_zero();
    }
    if (nz) return v;
  }
}

Outcome ideals_lemma3d() {
  Outcome o;
  LieAlgebra g = corpus("lemma3d");
  same_set(o, "lemma3d", proper_ideals(g, enumerate_ideals(g)), expected(g, {{"Y"}, {"Z"}, {"Y", "Z"}}));
  return o;
}

Outcome ideals_heisenberg() {
  Outcome o;
  LieAlgebra g = corpus("heisenberg");
  IdealLattice lat = enumerate_ideals(g);
  StringSet ones;
  for (const auto* s : lat.of_dim(1)) ones.insert(subspace_to_string(g, s->base) + (s->free_dim ? " (family)" : ""));
  same_set(o, "dim 1", ones, expected(g, {{"Z"}}));
  auto twos = lat.of_dim(2);
  o.require(twos.size() == 1, "dim 2 has " + std::to_string(twos.size()) + " strata");
  if (twos.size() == 1) {
    const auto& s = *twos.front();
    o.require(s.base == sub(g, {"Z"}) && s.free_dim == 1 && s.free_space == sub(g, {"X", "Y"}),
              "dim 2 stratum is not <Z> + any line of <X, Y>");
    ParamPool pool(g.labels());
    StringSet got, want = expected(g, {{"Y", "Z"}});
    for (const auto& c : expand_charts(s, pool)) {
      got.insert(subspace_to_string(g, c));
      // the family chart carries its own parameter name
      for (const auto& p : c.params())
        want.insert(subspace_to_string(
            g, sub(g, {"Z"}) + Subspace::span(3, {parse_element_expr(g, "X") + Scalar::param(p) * parse_element_expr(g, "Y")})));
    }
    same_set(o, "charts", got, want);
  }
  return o;
}

Outcome real_ideals_rotation() {
  Outcome o;
  for (const char* name : {"example41", "remark41"}) {
    LieAlgebra g = corpus(name);
    IdealLattice lat = enumerate_ideals_real(g);
    Subspace derived = derived_series(g)[1];
    same_set(o, name, proper_ideals(g, lat), StringSet{subspace_to_string(g, derived)});
    o.require(derived.dim() == 2, std::string(name) + ": derived algebra is not 2-d");
  }
  return o;
}

Outcome ideals_example43() {
  Outcome o;
  LieAlgebra g = corpus("example43");
  same_set(o, "example43", proper_ideals(g, enumerate_ideals(g)),
           expected(g, {{"e4"}, {"e1", "e4"}, {"e3", "e4"}, {"e1", "e3", "e4"}}));
  return o;
}

Outcome classify_lines() {
  Outcome o;
  auto check = [&](const char* name, const std::vector<std::initializer_list<const char*>>& want) {
    LieAlgebra g = corpus(name);
    same_set(o, name, class_set(g, classify_1d(g)), expected(g, want));
  };
  check("lemma2d", {{"X"}, {"Y"}});
  check("lemma3d", {{"X"}, {"Y"}, {"Z"}, {"Y + Z"}, {"Y - Z"}});
  check("example41", {{"X"}, {"Y"}});
  check("example43", {{"e4"}, {"e1"}, {"e3"}, {"e1 + e3"}, {"e1 - e3"}, {"e2"}});

  LieAlgebra h = corpus("heisenberg");
  auto cls = classify_1d(h);
  StringSet fixed;
  std::size_t families = 0;
  for (const auto& c : cls) {
    if (c.labels.empty()) {
      fixed.insert(subspace_to_string(h, c.representative));
      continue;
    }
    ++families;
    const std::string& k = c.labels.front();
    Subspace want = Subspace::span(3, {parse_element_expr(h, "X") + Scalar::param(k) * parse_element_expr(h, "Y")});
    o.require(c.labels.size() == 1 && c.representative == want, "heisenberg family is " + subspace_to_string(h, c.representative));
  }
  same_set(o, "heisenberg", fixed, expected(h, {{"Z"}, {"Y"}}));
  o.require(families == 1, "heisenberg has " + std::to_string(families) + " families");
  return o;
}

void certified(Outcome& o, const LieAlgebra& g, const Classification& c, std::size_t d) {
  for (const auto& p : c.certificates)
    if (p.dim == d && p.result.kind == Distinction::PossiblyConjugate)
      o.require(false, g.name() + " dim " + std::to_string(d) + ": " +
                           subspace_to_string(g, c.by_dim[d][p.a].representative) + " and " +
                           subspace_to_string(g, c.by_dim[d][p.b].representative) + " not certified");
}

Outcome classify_planes() {
  Outcome o;
  auto check = [&](const char* name, const std::vector<std::initializer_list<const char*>>& want) {
    LieAlgebra g = corpus(name);
    Classification c = classify_all(g, 2);
    same_set(o, name, class_set(g, c.by_dim[2]), expected(g, want));
    certified(o, g, c, 2);
  };
  check("lemma3d", {{"X", "Y"}, {"X", "Z"}, {"Y", "Z"}});
  check("example41", {{"Y", "Z"}});
  check("example43", {{"e4", "e2"}, {"e4", "e1"}, {"e4", "e3"}, {"e4", "e1 + e3"}, {"e4", "e1 - e3"}, {"e2", "e3"}});

  LieAlgebra h = corpus("heisenberg");
  Classification c = classify_all(h, 2);
  StringSet fixed;
  std::size_t families = 0;
  for (const auto& k : c.by_dim[2]) {
    if (k.labels.empty()) {
      fixed.insert(subspace_to_string(h, k.representative));
      continue;
    }
    ++families;
    Subspace want = sub(h, {"Z"}) + Subspace::span(3, {parse_element_expr(h, "X") +
                                                          Scalar::param(k.labels.front()) * parse_element_expr(h, "Y")});
    o.require(k.representative == want, "heisenberg family is " + subspace_to_string(h, k.representative));
  }
  same_set(o, "heisenberg", fixed, expected(h, {{"Y", "Z"}}));
  o.require(families == 1, "heisenberg has " + std::to_string(families) + " families");
  certified(o, h, c, 2);
  return o;
}

Outcome classify_example43_dim3() {
  Outcome o;
  LieAlgebra g = corpus("example43");
  Classification c = classify_all(g, 3);
  same_set(o, "dim 3", class_set(g, c.by_dim[3]), expected(g, {{"e4", "e1", "e2"}, {"e4", "e1", "e3"}, {"e4", "e3", "e2"}}));
  certified(o, g, c, 3);

  // e^{t ad e3} on e4 ^ e1 ^ e2, compared with the wedge of the flowed vectors
  auto e = [&](const char* s) { return parse_element_expr(g, s); };
  FlowGenerator f = classify_generator(g, e("e3"));
  std::vector<Element> w{e("e4"), e("e1"), e("e2")};
  Multivector direct = exterior_flow_apply(f, w);
  std::vector<Element> moved;
  for (const auto& v : w) moved.push_back(flow_apply(f, v));
  o.require(direct == Multivector::wedge(4, moved), "exterior flow disagrees with the wedge of flowed vectors");
  Scalar t = Scalar::param(f.time);
  o.require(direct.coefficient({3, 0, 1}) == Scalar(1), "e4^e1^e2 coefficient is not 1");
  o.require(direct.coefficient({3, 0, 2}) == Scalar(3) * t, "e4^e1^e3 coefficient is not 3t");
  o.require(direct.coefficient({0, 2, 3}) == Scalar(3) * t, "e1^e3^e4 coefficient is not 3t");
  auto r = distinguish_by_orbit(g, sub(g, {"e4", "e1", "e2"}), sub(g, {"e4", "e3", "e2"}));
  o.require(r.kind == Distinction::DistinctByOrbit, "<e4, e1, e2> vs <e4, e3, e2>: " + std::string(distinction_name(r.kind)));
  return o;
}

Outcome soundness() {
  Outcome o;
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> d(-9, 9);
  std::size_t samples = 0, reps = 0, replays = 0;
  for (const auto& name : kCorpus) {
    LieAlgebra g = corpus(name);
    for (const auto& s : enumerate_ideals(g).strata) {
      ParamPool pool(g.labels());
      for (const auto& chart : expand_charts(s, pool)) {
        auto ps = chart.params();
        for (int k = 0; k < (ps.empty() ? 1 : 40); ++k) {
          std::map<std::string, Scalar> bind;
          for (const auto& p : ps) bind[p] = Scalar(d(rng));
          ++samples;
          o.require(static_cast<bool>(is_ideal(g, chart.substitute(bind))), name + ": stratum sample is not an ideal");
        }
      }
    }
    Classification c = classify_all(g);
    for (std::size_t dim = 1; dim < c.by_dim.size(); ++dim)
      for (const auto& k : c.by_dim[dim]) {
        ++reps;
        o.require(static_cast<bool>(is_subalgebra(g, k.representative)),
                  name + ": " + subspace_to_string(g, k.representative) + " is not a subalgebra");
        if (dim == 1) {
          ++replays;
          o.require(replay(g, k.trace), name + ": trace of " + subspace_to_string(g, k.representative) + " does not replay");
        }
      }
    // higher classes come from line classes of normalizer quotients; replay those too
    for (std::size_t dim = 1; dim + 1 < c.by_dim.size(); ++dim)
      for (const auto& k : c.by_dim[dim]) {
        SubalgebraView n = subalgebra_as_algebra(g, normalizer(g, k.representative));
        std::vector<Vec> local;
        for (const auto& v : k.representative.basis_vectors()) local.push_back(n.to_local(v));
        QuotientMap q = quotient(n.algebra, Subspace::span(n.algebra.dim(), local, k.constraints));
        if (q.target.dim() == 0) continue;
        for (const auto& qc : classify_1d(q.target)) {
          ++replays;
          o.require(replay(q.target, qc.trace), name + ": quotient trace over " + subspace_to_string(g, k.representative) +
                                                   " does not replay");
        }
      }
  }
  o.notes.push_back(std::to_string(samples) + " stratum samples, " + std::to_string(reps) + " representatives, " +
                    std::to_string(replays) + " traces");
  return o;
}

Outcome coverage() {
  Outcome o;
  std::vector<std::future<std::pair<std::string, std::size_t>>> jobs;
  for (std::size_t a = 0; a < kCorpus.size(); ++a)
    jobs.push_back(std::async(std::launch::async, [a] {
      LieAlgebra g = corpus(kCorpus[a]);
      auto classes = classify_1d(g);
      auto forms = candidate_forms_1d(g, lattice_for(g));
      std::mt19937 rng(100 + static_cast<unsigned>(a));
      std::size_t escapes = 0;
      for (int k = 0; k < 500; ++k)
        if (!locate_line(g, forms, classes, random_vec(rng, g.dim()))) ++escapes;
      return std::make_pair(kCorpus[a], escapes);
    }));
  for (auto& j : jobs) {
    auto [name, escapes] = j.get();
    o.require(escapes == 0, name + ": " + std::to_string(escapes) + " of 500 lines escaped");
  }
  o.notes.push_back("500 lines per algebra");
  return o;
}

Outcome oracle() {
  Outcome o;
  for (const auto& name : kCorpus) {
    LieAlgebra g = corpus(name);
    if (g.dim() > 4) continue;
    OracleReport r = finite_field_oracle(g, enumerate_ideals(g), 101);
    if (r.skipped) {
      o.notes.push_back(name + " skipped: " + r.reason);
      continue;
    }
    std::ostringstream s;
    for (std::size_t i = 0; i < r.counted.size(); ++i) s << " " << r.counted[i] << "/" << r.predicted[i];
    o.require(r.agrees(), name + ": counted/predicted" + s.str());
  }
  return o;
}

Outcome flows() {
  Outcome o;
  for (const auto& name : kCorpus) {
    LieAlgebra g = corpus(name);
    std::vector<Element> gens;
    for (std::size_t i = 0; i < g.dim(); ++i) gens.push_back(g.basis_element(i));
    for (const auto& v : derived_series(g)[1].basis_vectors()) gens.push_back(v);
    for (const auto& x : gens) {
      FlowGenerator f = classify_generator(g, x);
      o.require(f.matrix == adjoint_matrix(g, x), name + ": generator matrix differs from ad(" + g.element_to_string(x) + ")");
      if (f.kind != FlowGenerator::Kind::Unipotent) continue;
      Matrix e = flow_matrix(f);
      for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
          Element a = g.basis_element(i), b = g.basis_element(j);
          o.require(e * g.bracket(a, b) == g.bracket(e * a, e * b),
                    name + ": exp(t ad " + g.element_to_string(x) + ") is not an automorphism");
        }
    }
  }
  LieAlgebra l3 = corpus("lemma3d");
  auto [x, tx] = align_with_torus(l3, sub(l3, {"X"}), sub(l3, {"Y", "Z"}), parse_element_expr(l3, "X + a*Y + b*Z"));
  o.require(x == parse_element_expr(l3, "X") && replay(l3, tx), "lemma3d aligns to " + l3.element_to_string(x));
  LieAlgebra e43 = corpus("example43");
  auto [y, ty] = align_with_torus(e43, sub(e43, {"e2"}), sub(e43, {"e1", "e3", "e4"}),
                                  parse_element_expr(e43, "e2 + a*e1 + b*e3 + c*e4"));
  o.require(y == parse_element_expr(e43, "e2") && replay(e43, ty), "example43 aligns to " + e43.element_to_string(y));
  return o;
}

Outcome real_complex() {
  Outcome o;
  std::mt19937 rng(12);
  for (const auto& name : kCorpus) {
    LieAlgebra g = corpus(name);
    LieAlgebra gc = complexify(g);
    std::uniform_int_distribution<std::size_t> dims(1, g.dim());
    for (int k = 0; k < 200; ++k) {
      std::size_t d = dims(rng);
      std::vector<Vec> vs;
      for (std::size_t i = 0; i < d; ++i) vs.push_back(random_vec(rng, g.dim()));
      Subspace s = Subspace::span(g.dim(), vs);
      o.require(real_points(gc, s) == s, name + ": real points of " + subspace_to_string(g, s) + " differ");
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ideals of lemma3d", ideals_lemma3d},
      {"ideals of heisenberg", ideals_heisenberg},
      {"real ideals of the rotation algebras", real_ideals_rotation},
      {"ideals of example43", ideals_example43},
      {"one-dimensional classes", classify_lines},
      {"two-dimensional classes", classify_planes},
      {"three-dimensional classes of example43", classify_example43_dim3},
      {"soundness", soundness},
      {"coverage", coverage},
      {"finite-field oracle", oracle},
      {"flow exactness", flows},
      {"real/complex consistency", real_complex},
  };
  std::size_t passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    passed += o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << " (" << t.str() << "s)";
    for (const auto& n : o.notes) std::cout << "; " << n;
    std::cout << "\n";
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed\n";
  return 0;
}
