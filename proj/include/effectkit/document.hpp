#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "effectkit/errors.hpp"
#include "effectkit/finite.hpp"
#include "effectkit/interval.hpp"

namespace effectkit {

// A parsed `.ea` file: a named table algebra or interval Γ(G,u).
//
//   algebra NAME
//   kind table                      kind interval
//   labels 0 a b 1                  group
//   zero 0                            rank 2
//   one 1                             domain Z        (Z, Q, or one letter per coordinate)
//   sums                              cone lex(product(1), product(1))
//   a+b=1                             unit 1,0        (rationals as p/q)
//   end                             end
//                                   split 1 1       (optional head/tail ranks)
//
// Sums with 0 are implied; each unordered pair is listed once. `#` starts a
// comment.
struct AlgebraDocument {
  std::string name;
  std::variant<FiniteEffectAlgebra, IntervalEffectAlgebra> host;

  bool is_table() const { return std::holds_alternative<FiniteEffectAlgebra>(host); }
  FiniteEffectAlgebra const& table() const { return std::get<FiniteEffectAlgebra>(host); }
  IntervalEffectAlgebra const& interval() const { return std::get<IntervalEffectAlgebra>(host); }

  friend bool operator==(AlgebraDocument const& a, AlgebraDocument const& b) {
    if (a.name != b.name || a.is_table() != b.is_table()) return false;
    if (a.is_table()) return a.table() == b.table();
    auto const& x = a.interval();
    auto const& y = b.interval();
    return x.group == y.group && x.split == y.split;
  }
};

namespace detail {

struct Line {
  int number;
  std::string text;
  std::vector<std::string> words;
};

inline std::vector<Line> document_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::string t(trim(raw));
    if (t.empty()) continue;
    std::istringstream ws(t);
    std::vector<std::string> words;
    for (std::string w; ws >> w;) words.push_back(w);
    out.push_back({n, t, std::move(words)});
  }
  return out;
}

inline std::string rest_of(Line const& l) { return std::string(trim(std::string_view(l.text).substr(l.words[0].size()))); }

inline FiniteEffectAlgebra parse_table(std::vector<Line> const& ls, std::size_t& i) {
  std::vector<std::string> labels;
  std::string zero, one;
  std::vector<std::pair<int, std::array<std::string, 3>>> triples;
  int last = ls[i - 1].number;
  for (; i < ls.size(); ++i) {
    auto const& l = ls[i];
    last = l.number;
    auto const& key = l.words[0];
    if (key == "labels") {
      labels.assign(l.words.begin() + 1, l.words.end());
    } else if (key == "zero" || key == "one") {
      if (l.words.size() != 2) throw ParseError(key + " takes one label", l.number);
      (key == "zero" ? zero : one) = l.words[1];
    } else if (key == "sums") {
      for (++i; i < ls.size() && ls[i].text != "end"; ++i) {
        auto const& s = ls[i];
        std::string t;
        for (char c : s.text)
          if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        auto plus = t.find('+');
        auto eq = t.find('=');
        if (plus == std::string::npos || eq == std::string::npos || plus == 0 || eq < plus + 2 || eq + 1 >= t.size())
          throw ParseError("expected a sum 'a+b=c', got '" + s.text + "'", s.number);
        triples.push_back({s.number, {t.substr(0, plus), t.substr(plus + 1, eq - plus - 1), t.substr(eq + 1)}});
      }
      if (i == ls.size()) throw ParseError("sums block has no 'end'", last);
    } else {
      throw ParseError("unknown key '" + key + "' in table algebra", l.number);
    }
  }
  if (labels.empty()) throw ParseError("table algebra needs labels", last);
  if (zero.empty() || one.empty()) throw ParseError("table algebra needs zero and one", last);
  auto index = [&](std::string const& s, int line) {
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == s) return static_cast<int>(k);
    throw ParseError("unknown label '" + s + "'", line);
  };
  std::size_t n = labels.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n, FiniteEffectAlgebra::undefined));
  int z = index(zero, 0), o = index(one, 0);
  auto put = [&](int a, int b, int c, int line) {
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      int& slot = t[x][y];
      if (slot != FiniteEffectAlgebra::undefined && slot != c)
        throw ParseError("conflicting sums for " + labels[x] + "+" + labels[y], line);
      slot = c;
    }
  };
  for (std::size_t a = 0; a < n; ++a) put(z, static_cast<int>(a), static_cast<int>(a), 0);
  for (auto const& [line, tr] : triples) put(index(tr[0], line), index(tr[1], line), index(tr[2], line), line);
  try {
    return FiniteEffectAlgebra(std::move(labels), std::move(t), z, o);
  } catch (std::invalid_argument const& e) {
    throw ParseError(e.what(), last);
  }
}

inline IntervalEffectAlgebra parse_interval(std::vector<Line> const& ls, std::size_t& i) {
  std::optional<std::size_t> rank;
  std::string domain = "Z", unit_text;
  std::optional<Cone> cone;
  std::optional<std::pair<std::size_t, std::size_t>> split;
  int last = ls[i - 1].number, split_line = 0;
  for (; i < ls.size(); ++i) {
    auto const& l = ls[i];
    last = l.number;
    if (l.words[0] == "group") {
      for (++i; i < ls.size() && ls[i].text != "end"; ++i) {
        auto const& g = ls[i];
        auto const& key = g.words[0];
        last = g.number;
        if (key == "rank") {
          if (g.words.size() != 2) throw ParseError("rank takes one number", g.number);
          try {
            rank = std::stoul(g.words[1]);
          } catch (std::exception const&) {
            throw ParseError("bad rank '" + g.words[1] + "'", g.number);
          }
        } else if (key == "domain") {
          domain = rest_of(g);
        } else if (key == "cone") {
          std::string body = rest_of(g);
          int col = static_cast<int>(g.text.size() - body.size());
          cone = parse_cone(body, g.number, col);
        } else if (key == "unit") {
          unit_text = rest_of(g);
        } else {
          throw ParseError("unknown key '" + key + "' in group block", g.number);
        }
      }
      if (i == ls.size()) throw ParseError("group block has no 'end'", last);
    } else if (l.words[0] == "split") {
      if (l.words.size() != 3) throw ParseError("split takes head and tail ranks", l.number);
      try {
        split = std::pair{std::stoul(l.words[1]), std::stoul(l.words[2])};
      } catch (std::exception const&) {
        throw ParseError("bad split ranks", l.number);
      }
      split_line = l.number;
    } else {
      throw ParseError("unknown key '" + l.words[0] + "' in interval algebra", l.number);
    }
  }
  if (!cone) throw ParseError("interval algebra needs a cone", last);
  if (rank && *rank != cone->rank())
    throw ParseError("rank " + std::to_string(*rank) + " does not match cone rank " + std::to_string(cone->rank()), last);
  if (unit_text.empty()) throw ParseError("interval algebra needs a unit", last);
  std::string dom_prefix = domain;
  ConePoGroup G;
  try {
    G = parse_group_literal(dom_prefix + ":" + cone->str() + "@" + unit_text);
  } catch (ParseError const& e) {
    throw ParseError(e.what(), last);
  }
  IntervalEffectAlgebra E;
  try {
    E = gamma(G);
  } catch (std::invalid_argument const& e) {
    throw ParseError(e.what(), last);
  }
  if (split) {
    if (split->first + split->second != E.rank())
      throw ParseError("split ranks do not add up to " + std::to_string(E.rank()), split_line);
    if (!lex_split(E.group, split->first))
      throw ParseError("split " + std::to_string(split->first) + " is not a lexicographic factor boundary", split_line);
    E.split = split->first;
  }
  return E;
}

}  // namespace detail

inline AlgebraDocument parse_document(std::string_view text) {
  auto ls = detail::document_lines(text);
  std::size_t i = 0;
  AlgebraDocument doc;
  if (i >= ls.size() || ls[i].words[0] != "algebra" || ls[i].words.size() != 2)
    throw ParseError("document must start with 'algebra NAME'", ls.empty() ? 1 : ls[0].number);
  doc.name = ls[i++].words[1];
  if (i >= ls.size() || ls[i].words[0] != "kind" || ls[i].words.size() != 2)
    throw ParseError("expected 'kind table' or 'kind interval'", i < ls.size() ? ls[i].number : ls.back().number);
  std::string kind = ls[i].words[1];
  int kind_line = ls[i++].number;
  if (kind == "table") doc.host = detail::parse_table(ls, i);
  else if (kind == "interval") doc.host = detail::parse_interval(ls, i);
  else throw ParseError("unknown kind '" + kind + "'", kind_line);
  return doc;
}

inline AlgebraDocument load_document(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

inline std::string emit_document(AlgebraDocument const& d) {
  std::string out = "algebra " + d.name + "\n";
  if (d.is_table()) {
    auto const& E = d.table();
    out += "kind table\nlabels";
    for (auto const& l : E.labels()) out += " " + l;
    out += "\nzero " + E.label(E.zero()) + "\none " + E.label(E.one()) + "\nsums\n";
    for (int a = 0; a < E.n(); ++a)
      for (int b = a; b < E.n(); ++b)
        if (a != E.zero() && b != E.zero() && E.defined(a, b))
          out += E.label(a) + "+" + E.label(b) + "=" + E.label(E.sum(a, b)) + "\n";
    return out + "end\n";
  }
  auto const& E = d.interval();
  std::string dom;
  for (auto x : E.group.domains) dom += domain_char(x);
  if (dom.find_first_not_of(dom[0]) == std::string::npos) dom = dom.substr(0, 1);
  std::string unit;
  for (std::size_t i = 0; i < E.rank(); ++i) unit += (i ? "," : "") + E.u()[i].str();
  out += "kind interval\ngroup\nrank " + std::to_string(E.rank()) + "\ndomain " + dom + "\ncone " + E.group.cone.str() +
         "\nunit " + unit + "\nend\n";
  if (E.split) out += "split " + std::to_string(*E.split) + " " + std::to_string(E.rank() - *E.split) + "\n";
  return out;
}

}  // namespace effectkit
