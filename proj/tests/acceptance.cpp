// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any fails.
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "effectkit/effectkit.hpp"
#include "oracles.hpp"

using namespace effectkit;
namespace fx = effectkit::fixtures;

namespace {

constexpr int kSamples = 200;  // sampled pairs / elements per fixture

struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool ok, std::string const& what) {
  if (!ok) throw Failed(what);
}

Vec v(std::initializer_list<int> xs) {
  std::vector<Rat> r;
  for (int x : xs) r.push_back(Rat(x));
  return Vec(std::move(r));
}

std::vector<std::size_t> prefix(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

std::optional<int> oracle_bound(FiniteEffectAlgebra const& E, int a, int b, bool upper) {
  auto le = [&](int x, int y) { return upper ? oracle::below(E, y, x) : oracle::below(E, x, y); };
  for (int m = 0; m < E.n(); ++m) {
    if (!le(m, a) || !le(m, b)) continue;
    bool best = true;
    for (int l = 0; l < E.n() && best; ++l)
      if (le(l, a) && le(l, b) && !le(l, m)) best = false;
    if (best) return m;
  }
  return std::nullopt;
}

bool same_set(IntervalEffectAlgebra const& E, SymbolicIdeal const& a, SymbolicIdeal const& b,
              std::vector<Vec> const& pts) {
  return signature(E, a, pts) == signature(E, b, pts);
}

std::size_t nontrivial(IntervalEffectAlgebra const& E, std::vector<SymbolicIdeal> const& ideals,
                       std::vector<Vec> const& pts, std::vector<SymbolicIdeal>* out = nullptr) {
  std::size_t n = 0;
  for (auto const& I : ideals) {
    if (is_whole(E, I) || is_zero(E, I, pts)) continue;
    ++n;
    if (out) out->push_back(I);
  }
  return n;
}

// ---------------------------------------------------------------------------

std::string axioms_and_rdp() {
  int checked = 0;
  for (auto const& [name, E] : fx::finite()) {
    need(verify_axioms(E).holds(), name + " violates the axioms");
    if (E.n() > 12) continue;
    bool lib = check_rdp(E).outcome.holds();
    need(lib == oracle::rdp(E), name + " RDP verdict disagrees with the refinement oracle");
    if (name == "HS4") need(!lib, "HS4 reported RDP");
    ++checked;
  }
  return std::to_string(checked) + " fixtures; HS4 refuted";
}

std::string generated_ideals() {
  int n = 0;
  for (auto const& [name, E] : fx::finite())
    for (int a = 0; a < E.n(); ++a, ++n) {
      auto A = singleton(E, a);
      need(generated_ideal(E, A) == oracle::closure(E, A), name + " <" + E.label(a) + "> differs from closure");
    }
  return std::to_string(n) + " singleton generators";
}

std::string infinitesimals_in_radical() {
  for (auto const& [name, E] : fx::finite()) {
    if (!oracle::rdp(E)) continue;
    need(subset_of(infinitesimals(E), radical(E)), name + ": Infin not inside Rad");
  }
  auto E = fx::lex1();
  Budget b;
  auto inf = infinitesimals(E, b);
  auto L = ideal_lattice(E, b);
  int tail = 0;
  for (int t = -1; t <= 2; ++t)
    for (int g = -30; g <= 30; ++g) {
      Vec x = v({t, g});
      if (!in_carrier(E, x)) continue;
      bool expect = t == 0 && g >= 0;
      need(inf.membership.holds(x) == expect, "LEX1 Infin wrong at " + x.str());
      if (expect) {
        need(contains(E, L.radical, x), "LEX1 " + x.str() + " not in Rad");
        ++tail;
      }
    }
  return "LEX1 Infin = {0}×Z⁺ on " + std::to_string(tail) + " points, inside Rad";
}

std::string nested_lex_ideals() {
  auto E = fx::lex3();
  Budget b;
  auto pts = detail::probe_points(E, b);
  auto I1 = vanishing_ideal(E, prefix(2)), I2 = vanishing_ideal(E, prefix(1));
  std::vector<SymbolicIdeal> lex;
  for (auto const& I : symbolic_ideals(E, b))
    if (is_lexicographic(E, I, b).overall().holds()) lex.push_back(I);
  need(lex.size() == 2, std::to_string(lex.size()) + " lexicographic ideals, expected 2");
  bool found1 = false, found2 = false;
  for (auto const& I : lex) {
    found1 |= same_set(E, I, I1, pts);
    found2 |= same_set(E, I, I2, pts);
  }
  need(found1 && found2, "lexicographic ideals are not I₁ and I₂");
  bool strict = false;
  for (auto const& x : pts) {
    if (contains(E, I1, x)) need(contains(E, I2, x), "I₁ ⊄ I₂ at " + x.str());
    strict |= contains(E, I2, x) && !contains(E, I1, x);
  }
  need(strict, "I₁ = I₂ on probes");
  return "I₁ ⊂ I₂ lexicographic among " + std::to_string(symbolic_ideals(E, b).size()) + " candidates";
}

std::string counterexamples() {
  Budget b;
  auto L21 = fx::lex21();
  std::vector<SymbolicIdeal> nt;
  auto pts21 = detail::probe_points(L21, b);
  need(nontrivial(L21, symbolic_ideals(L21, b), pts21, &nt) == 1, "LEX21 nontrivial ideal not unique");
  auto r = is_retractive(L21, nt.front(), b);
  need(r.outcome.fails(), "LEX21 ideal not refuted as retractive");
  need(r.outcome.detail.find("2·c₁ = (2,1)") != std::string::npos, "certificate missing: " + r.outcome.detail);
  auto SQ = fx::square();
  std::vector<SymbolicIdeal> sq;
  auto ptsq = detail::probe_points(SQ, b);
  need(nontrivial(SQ, ideal_lattice(SQ, b).ideals, ptsq, &sq) == 2, "SQ does not have exactly two nontrivial ideals");
  for (auto const& I : sq) need(is_strict(SQ, I, b).fails(), "SQ has a strict nontrivial ideal");
  return "LEX21 certificate 2·c₁ = (2,1); SQ 2 nontrivial, none strict";
}

std::string round_trips() {
  std::vector<IntervalEffectAlgebra> heads{
      gamma(parse_group_literal("Z:product(1)@1")), gamma(parse_group_literal("Z:product(1)@2")),
      gamma(parse_group_literal("Z:product(1)@3")), gamma(parse_group_literal("Z:product(2)@1,1"))};
  int n = 0;
  for (auto const& [name, E] : fx::finite())
    for (auto const& H : heads) {
      auto T = enumerate(H);
      for (auto const& m : all_valued_hu_states(E, T)) {
        FiniteHuState s{T, carrier_points(H), m};
        auto D = hu_state_to_decomposition(E, s);
        need(validate_decomposition(E, D).holds(), name + " decomposition invalid");
        auto back = decomposition_to_hu_state(E, D, s.target_points);
        need(back.map == m, name + " state round trip differs");
        need(hu_state_to_decomposition(E, back).fibers == D.fibers, name + " decomposition round trip differs");
        ++n;
      }
    }
  for (auto const& E : {fx::lex1(), fx::lex21(), fx::lex3()})
    for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
      if (!lex_split(E.group, k)) continue;
      auto s = canonical_hu_state(E, k);
      auto D = hu_state_to_decomposition(s);
      need(validate_decomposition(E, D).holds(), "symbolic decomposition invalid");
      need(decomposition_to_hu_state(D).map == s.map, "symbolic round trip differs");
      ++n;
    }
  need(n >= 10, "too few valued states");
  return std::to_string(n) + " valued (H,u)-states";
}

std::string ordered_decompositions() {
  for (auto const& [name, E] : {std::pair{"LEX1", fx::lex1()}, {"LEX21", fx::lex21()}, {"LEX3", fx::lex3()}}) {
    auto D = canonical_decomposition(E, 1);
    auto r = is_ordered_decomposition(E, D);
    need(r.pairs >= kSamples, std::string(name) + " sampled only " + std::to_string(r.pairs) + " pairs");
    need(r.agree() && r.fiber_order.holds(), std::string(name) + " orderedness criteria disagree");
    auto c = ordered_decomposition_consequences(E, D);
    need(c.fiber_sums.holds(), std::string(name) + " fiber sums: " + c.fiber_sums.detail);
    need(c.over_unit.holds(), std::string(name) + " over-u sums: " + c.over_unit.detail);
  }
  return "criteria agree on ≥200 pairs; fiber sums and over-u checks hold";
}

std::string head_iso() {
  auto r1 = quotient_head_iso(fx::lex1(), canonical_decomposition(fx::lex1(), 1));
  need(r1.outcome.holds() && r1.quotient.size() == 2u, "LEX1 quotient is not 2 classes");
  need(iso_search(r1.quotient, fx::chain(1)).has_value(), "LEX1 quotient not ≅ C₁");
  auto r21 = quotient_head_iso(fx::lex21(), canonical_decomposition(fx::lex21(), 1));
  need(r21.outcome.holds() && r21.quotient.size() == 3u, "LEX21 quotient is not 3 classes");
  need(iso_search(r21.quotient, fx::chain(2)).has_value(), "LEX21 quotient not ≅ C₂");
  return "LEX1 → C₁, LEX21 → C₂";
}

std::string unique_states() {
  Budget b;
  int compared = 0;
  for (auto const& E : {fx::lex1(), fx::lex21()}) {
    auto r = unique_state(E);
    need(r.unique.holds() && r.state.has_value(), "unique state not reported");
    Sampler smp(b.seed);
    for (auto const& x : sample_elements(E, b, kSamples, 3)) {
      Vec y = x;
      y[1] = Rat(smp.integer(-20, 20));
      if (!in_carrier(E, y)) continue;
      need((*r.state)(x) == (*r.state)(y), "state depends on g at " + x.str());
      ++compared;
    }
  }
  auto B = fx::boolean4();
  need(unique_state(B).unique.fails(), "B4 reported unique");
  auto ex = state_extremes(B, *B.index_of("a"));
  need(ex && ex->first == Rat(0) && ex->second == Rat(1), "B4 s(a) extremes are not 0 and 1");
  return std::to_string(compared) + " g-perturbed samples; B4 s(a) ∈ [0,1]";
}

std::string representation() {
  Budget b;
  for (auto const& [E, tail] : {std::pair{fx::lex1(), std::string("Z")}, {fx::lex3(), std::string("Z ⃗× Z")}}) {
    auto D = canonical_decomposition(E, 1);
    auto F = find_strong_family(E, D, b);
    need(F.section.has_value(), "no strong family: " + F.outcome.detail);
    auto R = represent(E, F, D, b);
    need(R.overall().holds(), "represent: " + R.bijection.detail);
    need(group_display(R.tail) == tail, "tail " + group_display(R.tail) + ", expected " + tail);
    for (auto const& x : sample_elements(E, b, kSamples, 99)) {
      Vec y = R.forward(x);
      need(in_carrier(R.image, y) && R.backward(y) == x, "forward/backward fails at " + x.str());
    }
    for (auto const& y : sample_elements(R.image, b, kSamples, 98))
      need(R.forward(R.backward(y)) == y, "backward/forward fails at " + y.str());
  }
  auto L21 = fx::lex21();
  auto F = find_strong_family(L21, canonical_decomposition(L21, 1), b);
  need(!F.section && F.outcome.fails(), "LEX21 has a strong family");
  need(F.outcome.detail.find("2·c₁ = (2,1)") != std::string::npos, "LEX21 certificate missing");
  auto rep = run_command("represent", AlgebraDocument{"LEX21", L21}, "LEX21", {});
  need(rep.exit_code() == 1, "LEX21 represent does not report a violation");
  return "tails Z and Z ⃗× Z over 200+200 samples; LEX21 refuted";
}

std::string classification() {
  auto r1 = classify_local_retractive(fx::lex1());
  need(r1.i.holds() && r1.ii.holds() && r1.iii.holds(), "LEX1 branch fails");
  auto r21 = classify_local_retractive(fx::lex21());
  need(r21.i.fails(), "LEX21 branch (i) not refuted");
  need(!find_strong_family(fx::lex21(), canonical_decomposition(fx::lex21(), 1)).section, "LEX21 strong family");
  int decided = 0;
  for (auto const& f : fx::all()) {
    auto r = f.doc.is_table() ? classify_local_retractive(f.doc.table())
                              : classify_local_retractive(f.doc.interval());
    need(!r.consistency.fails(), f.name + ": " + r.consistency.detail);
    decided += r.consistency.verdict != Verdict::unknown;
  }
  return "LEX1 all branches, LEX21 (i) refuted; " + std::to_string(decided) + " fixtures consistent";
}

std::string open_quadrant() {
  auto E = fx::open_quadrant();
  Budget b;
  auto o = classify_order(E, b);
  need(o.antilattice.holds(), "K61 antilattice: " + o.antilattice.detail);
  need(o.lattice.fails(), "K61 lattice not refuted");
  need(is_simple(E, b).holds(), "K61 not simple");
  need(check_rdp(E, b).outcome.holds(), "K61 RDP not witnessed");
  return "antilattice, ¬lattice, simple, RDP";
}

std::string subdirect() {
  int hosts = 0;
  for (auto const& [name, E] : fx::finite()) {
    if (!oracle::rdp(E) || E.n() > 12) continue;
    ++hosts;
    auto r = subdirect_decompose(E);
    need(r.overall().holds(), name + " report fails");
    ElementSet cap = full_set(E.size());
    for (auto const& P : r.primes) cap = intersect(cap, P);
    need(count(cap) == 1u && cap[E.zero()], name + ": ∩P ≠ {0}");
    for (auto const& q : r.factors) {
      need(classify_order(q.algebra).antilattice, name + " factor not antilattice");
      std::vector<bool> hit(q.algebra.size());
      for (int x = 0; x < E.n(); ++x) hit[q.projection[x]] = true;
      for (bool h : hit) need(h, name + " projection not onto");
    }
    for (int a = 0; a < E.n(); ++a)
      for (int c = 0; c < E.n(); ++c) {
        bool all_below = true;
        for (auto const& q : r.factors) all_below &= oracle::below(q.algebra, q.projection[a], q.projection[c]);
        need(all_below == oracle::below(E, a, c), name + " embedding not an order-embedding");
        for (bool upper : {false, true})
          if (auto m = oracle_bound(E, a, c, upper))
            for (auto const& q : r.factors)
              need(oracle_bound(q.algebra, q.projection[a], q.projection[c], upper) == q.projection[*m],
                   name + (upper ? " join" : " meet") + " not preserved");
      }
  }
  return std::to_string(hosts) + " RDP hosts, exhaustive pairs";
}

std::string sim_property() {
  int maps = 0;
  for (auto const& [name, E] : fx::finite()) {
    bool rdp = oracle::rdp(E);
    for (auto const& I : all_ideals(E)) {
      if (!is_riesz(E, I).holds()) continue;
      auto q = quotient(E, I);
      auto pi = projection(E, q);
      need(is_surjective(pi), name + " projection not surjective");
      need(has_sim_property(pi).holds(), name + " projection lacks the ~-property");
      need(is_full(pi).holds(), name + " projection not full");
      if (rdp) need(oracle::rdp(q.algebra), name + " quotient loses RDP");
      ++maps;
    }
  }
  return std::to_string(maps) + " Riesz-ideal projections";
}

#ifdef EFFECTKIT_CLI
std::string shell(std::string const& args) {
  std::string cmd = std::string(EFFECTKIT_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw Failed("cannot run " + cmd);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  pclose(p);
  return out;
}
#endif

std::string determinism() {
  CommandOptions o;
  o.budget.seed = 1;
  int runs = 0;
  for (auto const& f : fx::all()) {
    auto path = std::string(EFFECTKIT_FIXTURE_DIR) + "/" + f.name + ".ea";
    auto doc = load_document(path);
    need(doc == f.doc, f.name + " file differs from the bundled fixture");
    auto text = emit_document(doc);
    need(parse_document(text) == doc && emit_document(parse_document(text)) == text, f.name + " parse/emit");
    for (auto const& c : command_names()) {
      if (c == "decompose") continue;
      try {
        auto a = run_command(c, doc, doc.name, o), b = run_command(c, doc, doc.name, o);
        need(emit_text(a) == emit_text(b) && emit_json(a) == emit_json(b), c + " " + f.name + " not reproducible");
        ++runs;
      } catch (Unsupported const&) {
      }
    }
#ifdef EFFECTKIT_CLI
    for (auto const* c : {"check", "classify"})
      need(shell(std::string("--seed 1 ") + c + " " + path) == shell(std::string("--seed 1 ") + c + " " + path),
           f.name + " CLI output differs between runs");
#endif
  }
  return std::to_string(runs) + " repeated command runs; 12 fixture files round-trip";
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"axioms and RDP oracle", axioms_and_rdp},
      {"generated ideals match closure", generated_ideals},
      {"infinitesimals inside the radical", infinitesimals_in_radical},
      {"lexicographic ideals of LEX3", nested_lex_ideals},
      {"retractive and strict counterexamples", counterexamples},
      {"state/decomposition round trips", round_trips},
      {"ordered decompositions", ordered_decompositions},
      {"quotient is the head", head_iso},
      {"unique states", unique_states},
      {"representation round trip", representation},
      {"local-retractive classification", classification},
      {"open quadrant K61", open_quadrant},
      {"subdirect decomposition", subdirect},
      {"~-property and fullness", sim_property},
      {"determinism and fixture round trip", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string status = "PASS", detail;
    try {
      detail = criteria[i].second();
    } catch (std::exception const& e) {
      status = "FAIL";
      detail = e.what();
      ++failed;
    }
    std::printf("%s %2zu  %-40s %s\n", status.c_str(), i + 1, criteria[i].first.c_str(), detail.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
