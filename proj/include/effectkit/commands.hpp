#pragma once

#include <optional>
#include <string>
#include <vector>

#include "effectkit/document.hpp"
#include "effectkit/lexrep.hpp"
#include "effectkit/report.hpp"
#include "effectkit/states.hpp"

namespace effectkit {

struct CommandOptions {
  Budget budget;
  std::optional<std::string> head;  // group literal for `decompose`
};

namespace detail {

inline Outcome flag(bool v, std::string const& no) { return v ? Outcome::proved() : Outcome::refuted(no); }

inline std::optional<FiniteEffectAlgebra> finite_view(AlgebraDocument const& d) {
  if (d.is_table()) return d.table();
  if (d.interval().enumerable) return enumerate(d.interval());
  return std::nullopt;
}

// c_t written out coordinatewise, e.g. "(t,0)".
inline std::string section_str(Matrix const& S, std::size_t k) {
  std::string out = "(";
  for (std::size_t r = 0; r < S.size(); ++r) {
    std::string e;
    for (std::size_t i = 0; i < k; ++i) {
      Rat c = S[r][i];
      if (c.is_zero()) continue;
      std::string var = k == 1 ? "t" : "t" + std::to_string(i + 1);
      std::string term = c == Rat(1) ? var : c == Rat(-1) ? "-" + var : c.str() + var;
      e += (e.empty() || term[0] == '-' ? "" : "+") + term;
    }
    out += (r ? "," : "") + (e.empty() ? std::string("0") : e);
  }
  return out + ")";
}

inline void order_notes(Report& r, FiniteEffectAlgebra const& E) {
  auto c = classify_order(E);
  r.note("lattice", flag(c.lattice, "some pair lacks a meet or join"));
  r.note("antilattice", flag(c.antilattice, "an incomparable pair has a meet or join"));
  r.note("linear", flag(c.linear, "incomparable elements exist"));
  r.note("MV-algebra", flag(c.mv, "not a lattice with RDP"));
  r.note("Archimedean", is_archimedean(E));
}

inline void order_notes(Report& r, IntervalEffectAlgebra const& E, Budget const& b) {
  auto c = classify_order(E, b);
  r.note("lattice", c.lattice);
  r.note("antilattice", c.antilattice);
  r.note("linear", c.linear);
  r.note("MV-algebra", c.mv);
  r.note("Archimedean", is_archimedean(E, b));
}

// ---------------------------------------------------------------------------

inline void cmd_check(Report& r, AlgebraDocument const& d, Budget const& b) {
  if (!d.is_table()) {
    auto const& E = d.interval();
    r.fact("group", E.group.str());
    r.check("cone axioms", check_cone_axioms(E.group, b));
    r.check("strong unit", strong_unit(E.group, b));
  }
  if (auto F = finite_view(d)) {
    r.fact("elements", std::to_string(F->size()));
    r.check("effect algebra axioms", verify_axioms(*F));
    r.note("RDP", check_rdp(*F).outcome);
    order_notes(r, *F);
  } else {
    r.fact("elements", "infinite");
    r.note("RDP", check_rdp(d.interval(), b).outcome);
    order_notes(r, d.interval(), b);
  }
}

inline void cmd_rdp(Report& r, AlgebraDocument const& d, Budget const& b) {
  if (auto F = finite_view(d)) {
    r.check("RDP", check_rdp(*F).outcome);
    return;
  }
  auto res = check_rdp(d.interval(), b);
  if (res.counterexample) {
    auto const& q = *res.counterexample;
    r.fact("counterexample", q[0].str() + "+" + q[1].str() + " = " + q[2].str() + "+" + q[3].str());
  }
  r.check("RDP", res.outcome);
}

inline void cmd_ideals(Report& r, AlgebraDocument const& d, Budget const& b) {
  if (auto F = finite_view(d)) {
    auto const& E = *F;
    bool rdp = check_rdp(E).outcome.holds();
    auto ideals = all_ideals(E);
    auto maxes = maximal_ideals(E);
    r.fact("ideals", std::to_string(ideals.size()));
    for (std::size_t i = 0; i < ideals.size(); ++i) {
      auto const& I = ideals[i];
      std::string tags;
      auto add = [&](bool on, char const* t) {
        if (on) tags += std::string(tags.empty() ? "" : " ") + t;
      };
      bool proper = is_proper(E, I);
      bool riesz = is_riesz(E, I).holds();
      add(std::find(maxes.begin(), maxes.end(), I) != maxes.end(), "maximal");
      add(proper && is_prime(E, I).holds(), "prime");
      add(riesz, "riesz");
      if (proper && riesz) {
        auto lv = is_lexicographic(E, I);
        add(lv.strict.holds(), "strict");
        add(lv.retractive.holds(), "retractive");
        add(lv.overall().holds(), "lexicographic");
        add(!lv.overall().holds() && lv.weak().holds(), "weak-lexicographic");
      }
      r.fact("I" + std::to_string(i), E.set_str(I) + (tags.empty() ? "" : " [" + tags + "]"));
    }
    ElementSet rad = radical(E);
    r.fact("radical", E.set_str(rad));
    r.note("local", flag(is_local(E), std::to_string(maxes.size()) + " maximal ideals"));
    r.note("simple", flag(is_simple(E), "nontrivial ideals exist"));
    auto ls = largest_strict_ideal(E);
    r.fact("largest strict nontrivial ideal", ls.largest ? E.set_str(*ls.largest) : "none ({0} is strict)");
    Outcome gen = Outcome::proved("every singleton generator");
    for (int a = 0; a < E.n(); ++a)
      if (generated_ideal(E, singleton(E, a), rdp) != ideal_closure(E, singleton(E, a)))
        gen = Outcome::refuted("generated ideal of " + E.label(a) + " differs from its closure");
    r.check("generated ideals match closure", gen);
    if (rdp) {
      ElementSet inf = infinitesimals(E);
      r.check("Infin(E) ⊆ Rad(E)", flag(subset_of(inf, rad), "Infin(E) = " + E.set_str(inf)));
    }
    return;
  }
  auto const& E = d.interval();
  auto L = ideal_lattice(E, b);
  r.fact("ideals", std::to_string(L.ideals.size()) + " among generated candidates");
  for (std::size_t i = 0; i < L.ideals.size(); ++i) {
    auto const& I = L.ideals[i];
    auto lv = is_lexicographic(E, I, b);
    std::string tags = std::string(to_string(I.validity.verdict));
    if (lv.strict.holds()) tags += " strict";
    if (lv.retractive.holds()) tags += " retractive";
    if (lv.prime.holds()) tags += " prime";
    if (lv.overall().holds()) tags += " lexicographic";
    r.fact("I" + std::to_string(i), I.str() + " [" + tags + "]");
  }
  r.fact("radical", L.radical.str());
  r.note("candidate basis", L.basis);
  r.note("local", flag(is_local(L), std::to_string(L.maximal.size()) + " maximal candidates"));
  r.note("simple", is_simple(E, b));
  auto inf = infinitesimals(E, b);
  r.fact("infinitesimals", inf.membership.str());
  Outcome sub = Outcome::witnessed("on probe points; " + b.str());
  if (inf.basis.verdict == Verdict::unknown) sub = inf.basis;
  for (auto const& x : detail::probe_points(E, b))
    if (inf.membership.holds(x) && !L.radical.membership.holds(x)) {
      sub = Outcome::refuted(x.str() + " is infinitesimal but not in the radical");
      break;
    }
  if (check_rdp(E, b).outcome.holds()) r.check("Infin(E) ⊆ Rad(E)", sub);
}


inline void cmd_states(Report& r, AlgebraDocument const& d, Budget const& b) {
  if (d.is_table()) {
    auto const& E = d.table();
    auto rep = unique_state(E);
    if (!rep.extremes.empty()) {
      r.check("state exists", Outcome::proved("exact linear feasibility"));
      for (int a = 0; a < E.n(); ++a) {
        auto [lo, hi] = rep.extremes[a];
        r.fact("s(" + E.label(a) + ")", lo == hi ? lo.str() : "[" + lo.str() + ", " + hi.str() + "]");
      }
    } else {
      r.check("state exists", rep.unique);
    }
    r.note("unique state", rep.unique);
    return;
  }
  auto const& E = d.interval();
  auto rep = unique_state(E);
  r.note("unique state", rep.unique);
  if (!rep.state) return;
  std::size_t k = E.enumerable ? E.rank() : head_rank(E);
  r.fact("state", "s(x) = " + rep.state->weights.str() + "·x");
  auto [back, zero_tail] = state_restrict(E, k, *rep.state, b);
  r.check("transfer round trip", flag(back == *rep.head.state, "restriction differs from the head state"));
  if (k < E.rank()) r.check("s(0,g) = 0", zero_tail);
}

inline void cmd_decompose(Report& r, AlgebraDocument const& d, CommandOptions const& o) {
  Budget const& b = o.budget;
  if (!o.head) throw Unsupported("decompose needs --head <group>");
  ConePoGroup H = parse_group_literal(*o.head);
  if (!H.unit) throw Unsupported("head group needs a unit");
  r.fact("head", H.str());
  if (auto F = finite_view(d)) {
    auto const& E = *F;
    auto T = gamma(H);
    if (!T.enumerable) throw Unsupported("finite hosts need an enumerable head [0,u]_H");
    auto TE = enumerate(T);
    auto pts = carrier_points(T);
    auto states = all_valued_hu_states(E, TE);
    r.check("valued (H,u)-state exists", flag(!states.empty(), "no valued (H,u)-state"));
    for (std::size_t i = 0; i < states.size(); ++i) {
      FiniteHuState s{TE, pts, states[i]};
      auto D = hu_state_to_decomposition(E, s);
      std::string fibers;
      for (int t = 0; t < TE.n(); ++t) fibers += (t ? "; " : "") + std::string("E_") + TE.label(t) + " = " + E.set_str(D.fibers[t]);
      std::string tag = "D" + std::to_string(i);
      r.fact(tag, fibers);
      r.check(tag + " round trip", flag(decomposition_to_hu_state(E, D).map == s.map, "state changed"));
      r.note(tag + " ordered", is_ordered_decomposition(E, D).verdict());
      r.note(tag + " directed", is_directed_decomposition(E, D));
    }
    return;
  }
  auto const& E = d.interval();
  auto sp = lex_split(E.group, H.rank());
  if (!sp || sp->first.domains != H.domains || !(sp->first.cone == H.cone) || sp->first.unit != H.unit)
    throw Unsupported("head " + H.str() + " is not the leading lexicographic factor of " + E.group.str());
  auto s = canonical_hu_state(E, H.rank());
  auto D = hu_state_to_decomposition(s);
  for (auto const& t : window_elements(D.target, b)) r.fact("E_" + t.str(), D.fiber(t).str());
  r.check("(a) and (b)", validate_decomposition(E, D, b));
  r.check("round trip", flag(decomposition_to_hu_state(D).map == s.map, "state changed"));
  auto ord = is_ordered_decomposition(E, D, b);
  r.note("ordered (fiber order)", ord.fiber_order);
  r.note("ordered (sum criterion)", ord.sum_criterion);
  r.check("order criteria agree", flag(ord.agree(), "fiber order and sum existence disagree"));
  r.note("directed", is_directed_decomposition(E, D, b));
  if (ord.verdict().holds()) {
    auto c = ordered_decomposition_consequences(E, D, b);
    r.check("E_0 + E_0 = E_0 ⊆ Infin(E)", c.zero_fiber);
    r.check("E_0 Riesz", c.riesz);
    r.check("E_s + E_v = E_{s+v}", c.fiber_sums);
    r.check("over-u sums undefined", c.over_unit);
    auto h = quotient_head_iso(E, D, b);
    r.check("E/E_0 ≅ Γ(H,u)", h.outcome);
  }
}

inline void cmd_represent(Report& r, AlgebraDocument const& d, Budget const& b) {
  if (auto F = finite_view(d)) {
    auto const& E = *F;
    Outcome rdp = check_rdp(E).outcome;
    r.check("host RDP", rdp);
    if (!rdp.holds()) return;
    for (auto const& M : maximal_ideals(E)) {
      Quotient q = quotient(E, M);
      auto D = hu_state_to_decomposition(E, FiniteHuState{q.algebra, {}, q.projection});
      if (!is_ordered_decomposition(E, D).verdict().holds() || !is_directed_decomposition(E, D).holds()) continue;
      auto fam = find_strong_family(E, D);
      if (!fam.section) continue;
      auto rep = represent(E, fam, D);
      r.fact("head", "E/" + E.set_str(M) + " (" + std::to_string(q.algebra.size()) + " elements)");
      r.fact("tail", "O");
      r.check("strong family", fam.outcome);
      r.check("representation", rep.outcome);
      return;
    }
    r.check("strong family", Outcome::refuted("no maximal ideal gives an ordered, directed decomposition with a strong family"));
    return;
  }
  auto const& E = d.interval();
  std::size_t k = head_rank(E);
  auto D = canonical_decomposition(E, k);
  auto fam = find_strong_family(E, D, b);
  r.fact("head", group_display(D.target.group) + " @ " + D.target.u().str());
  r.check("strong family", fam.outcome);
  if (!fam.section) return;
  auto R = represent(E, fam, D, b);
  r.fact("tail", group_display(R.tail));
  r.fact("section", "c_t = " + section_str(*fam.section, k));
  r.check("bijection", R.bijection);
  r.check("additivity", R.additivity);
  r.check("fibers", R.fibers);
  r.check("tail RDP", R.tail_rdp);
}

inline void cmd_subdirect(Report& r, AlgebraDocument const& d) {
  auto F = finite_view(d);
  if (!F) throw Unsupported("subdirect decomposition needs a finite carrier");
  auto const& E = *F;
  auto s = subdirect_decompose(E);
  for (std::size_t i = 0; i < s.primes.size(); ++i) {
    auto const& Q = s.factors[i].algebra;
    std::string shape = classify_order(Q).linear ? "chain" : "antilattice";
    r.fact("P" + std::to_string(i), E.set_str(s.primes[i]) + " -> " + std::to_string(Q.size()) + "-element " + shape);
  }
  r.check("∩P = {0}", s.intersection_zero);
  r.check("order embedding", s.order_embedding);
  r.check("projections onto", s.projections_onto);
  r.check("antilattice factors", s.antilattice_factors);
  r.check("meets and joins preserved", s.lattice_ops);
}

inline void cmd_classify(Report& r, AlgebraDocument const& d, Budget const& b) {
  BranchReport c;
  if (auto F = finite_view(d)) {
    c = classify_local_retractive(*F);
    order_notes(r, *F);
  } else {
    c = classify_local_retractive(d.interval(), b);
    order_notes(r, d.interval(), b);
  }
  r.note("RDP", flag(c.rdp, "no"));
  r.note("local", c.local);
  if (c.local.holds()) {
    r.note("Rad retractive", c.rad_retractive);
    r.note("Rad strict", c.rad_strict);
  }
  r.note("(i) local, Rad retractive and strict", c.i);
  r.note("(ii) strong (H,u)-perfect", c.ii);
  r.note("(iii) Γ(H ⃗× G,(u,0))", c.iii);
  r.fact("H", c.head);
  r.fact("G", c.tail);
  if (c.rdp) r.check("branches consistent", c.consistency);
}

}  // namespace detail

inline std::vector<std::string> command_names() {
  return {"check", "rdp", "ideals", "states", "decompose", "represent", "subdirect", "classify"};
}

// Runs one command on a parsed document. Throws Unsupported or ParseError
// for inputs the command cannot handle.
inline Report run_command(std::string const& command, AlgebraDocument const& d, std::string const& input,
                          CommandOptions const& o = {}) {
  Report r{command, input, o.budget, {}, {}, std::nullopt};
  Budget const& b = o.budget;
  if (command == "check") detail::cmd_check(r, d, b);
  else if (command == "rdp") detail::cmd_rdp(r, d, b);
  else if (command == "ideals") detail::cmd_ideals(r, d, b);
  else if (command == "states") detail::cmd_states(r, d, b);
  else if (command == "decompose") detail::cmd_decompose(r, d, o);
  else if (command == "represent") detail::cmd_represent(r, d, b);
  else if (command == "subdirect") detail::cmd_subdirect(r, d);
  else if (command == "classify") detail::cmd_classify(r, d, b);
  else throw Unsupported("unknown command '" + command + "'");
  return r;
}

}  // namespace effectkit
