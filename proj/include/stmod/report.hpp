#pragma once

// Batch front end: parse a run configuration, execute the checks, and emit
// a self-auditing report.  Each row carries the claimed value with its
// citation tag next to the computed bounds, so disagreements surface as
// statuses rather than silent edits; mismatches never abort a run.

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stmod/artriangles.hpp"
#include "stmod/constructions.hpp"
#include "stmod/ghosts.hpp"
#include "stmod/words.hpp"

namespace stmod {

struct ConfigError : std::runtime_error {
  std::size_t line, column;
  ConfigError(std::size_t l, std::size_t c, const std::string& msg)
      : std::runtime_error("config error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l),
        column(c) {}
};

struct ReportRow {
  std::string subject;
  std::string claimed;
  std::string citation;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::string upper_method;
  std::string status;  // match | within-bounds | inconclusive | mismatch
  long runtime_ms = 0;
};

struct Report {
  std::vector<ReportRow> rows;
  bool any_mismatch() const {
    for (const auto& r : rows)
      if (r.status == "mismatch") return true;
    return false;
  }
};

namespace detail {

inline std::string interval_str(std::size_t lo, std::size_t hi) {
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

inline std::string interval_status(std::size_t claimed_lo, std::size_t claimed_hi,
                                   std::size_t lo, std::size_t hi) {
  if (lo > claimed_hi || hi < claimed_lo) return "mismatch";
  if (claimed_lo == lo && claimed_hi == hi) return "match";
  if (claimed_lo >= lo && claimed_hi <= hi) return "within-bounds";
  return "inconclusive";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// group-level ghost-number rows

struct GroupBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::string method;
};

// lower bound from a certified witness chain on one module, upper bound from
// the generating-number bound: gel < nilpotency index of J(kG)
inline GroupBounds group_bounds_witness(SyzygyCache& cache, const GModule& witness_module,
                                        const std::vector<CertifiedGhost>& chain, long window,
                                        std::size_t nmax) {
  BoundsOptions opt;
  opt.use_iteration = false;
  auto b = ghost_length_bounds(cache, witness_module, window, nmax, chain, opt);
  GroupBounds out;
  out.lower = b.lower;
  out.upper = radical_length(regular_module(witness_module.group(), witness_module.p())) - 1;
  out.method = "socle_bound(kG)-1";
  return out;
}

// over a cyclic group every module is a sum of the M_n, so the ghost number
// is the largest of their ghost lengths
inline GroupBounds group_bounds_cyclic(SyzygyCache& cache, const GroupPtr& g, u32 p,
                                       long window, std::size_t nmax) {
  GroupBounds out;
  out.method = "indecomposable enumeration";
  const std::size_t n = g->order;
  for (std::size_t d = 1; d < n; ++d) {
    auto mn = cyclic_quotient_module(g, p, d);
    GMap gm1(mn, mn, mn.gen_act(0) - FpMatrix::identity(p, d), false);
    std::vector<CertifiedGhost> chain(
        n, CertifiedGhost{gm1, GhostCertificate::by_theorem("central multiplication x-1")});
    auto b = ghost_length_bounds(cache, mn, window, nmax, chain);
    out.lower = std::max(out.lower, b.lower);
    out.upper = std::max(out.upper, b.upper);
  }
  if (n == 1) out.lower = out.upper = 0;
  return out;
}

// ---------------------------------------------------------------------------
// the preset tables

namespace detail {

struct TableEntry {
  std::string subject;
  std::size_t claimed_lo, claimed_hi;
  std::string citation;
};

inline ReportRow finish_row(const TableEntry& e, const GroupBounds& gb) {
  ReportRow row;
  row.subject = e.subject;
  row.claimed = interval_str(e.claimed_lo, e.claimed_hi);
  row.citation = e.citation;
  row.lower = gb.lower;
  row.upper = gb.upper;
  row.upper_method = gb.method;
  row.status = interval_status(e.claimed_lo, e.claimed_hi, gb.lower, gb.upper);
  return row;
}

inline std::vector<CertifiedGhost> theta_chain(const GroupPtr& g, u32 p,
                                               const std::vector<std::size_t>& dims) {
  return abelian_theta(g, p, dims).factors;
}

}  // namespace detail

struct PresetOptions {
  long window = -1;  // overrides the per-row default 2 * soclen(kG)
  long nmax = -1;
};

// ghost-number rows for the groups treated in the computations: exact values
// where known, the open interval for Q_8
inline Report preset_paper_table(SyzygyCache& cache, const PresetOptions& po = {}) {
  Report rep;
  auto add_cyclic = [&](const std::string& name, std::size_t order, u32 p,
                        std::size_t claimed, const std::string& cite) {
    auto g = make_cyclic(order);
    long window = po.window >= 0 ? po.window : 2 * static_cast<long>(order);
    std::size_t nmax = po.nmax >= 0 ? static_cast<std::size_t>(po.nmax) : order;
    auto gb = group_bounds_cyclic(cache, g, p, window, nmax);
    rep.rows.push_back(detail::finish_row({name, claimed, claimed, cite}, gb));
  };
  auto add_witnessed = [&](const std::string& name, const GModule& m,
                           const std::vector<CertifiedGhost>& chain, std::size_t clo,
                           std::size_t chi, const std::string& cite) {
    long window = po.window >= 0
                      ? po.window
                      : 2 * static_cast<long>(radical_length(regular_module(m.group(), m.p())));
    std::size_t nmax = po.nmax >= 0 ? static_cast<std::size_t>(po.nmax) : m.dim() + 1;
    auto gb = group_bounds_witness(cache, m, chain, window, nmax);
    rep.rows.push_back(detail::finish_row({name, clo, chi, cite}, gb));
  };

  add_cyclic("C_2", 2, 2, 1, "ghost number 1: the generating hypothesis holds for C_2");
  add_cyclic("C_3", 3, 3, 1, "ghost number 1: the generating hypothesis holds for C_3");
  add_cyclic("C_4", 4, 2, 2, "cyclic ghost number ceil((p^r-1)/2)");
  add_cyclic("C_5", 5, 5, 2, "cyclic ghost number ceil((p^r-1)/2)");
  add_cyclic("C_9", 9, 3, 4, "cyclic ghost number ceil((p^r-1)/2)");

  {
    auto v = make_product(make_cyclic(2), make_cyclic(2));
    add_witnessed("C_2xC_2", abelian_theta(v, 2, {1, 2}).module,
                  detail::theta_chain(v, 2, {1, 2}), 2, 2,
                  "abelian ghost number: groups of ghost number 2");
  }
  {
    auto e8 = make_product(make_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2));
    add_witnessed("C_2xC_2xC_2", abelian_theta(e8, 2, {1, 2, 2}).module,
                  detail::theta_chain(e8, 2, {1, 2, 2}), 3, 3,
                  "elementary abelian 2-group of rank 3 has ghost number 3");
  }
  {
    auto g33 = make_product(make_cyclic(3), make_cyclic(3));
    add_witnessed("C_3xC_3", abelian_theta(g33, 3, {1, 3}).module,
                  detail::theta_chain(g33, 3, {1, 3}), 3, 3,
                  "the ghost number of k(C_3xC_3) is 3");
  }
  for (std::size_t q : {std::size_t(2), std::size_t(4)}) {
    auto d = make_dihedral(4 * q);
    auto c2q = subgroup(d, {d->op(d->generator("x"), d->generator("y"))});
    auto w = right_mult_witness(d, 2, c2q, q);
    std::vector<std::size_t> xs;
    for (std::size_t t = 0; t < q / 2; ++t) {
      xs.push_back(d->generator("x"));
      xs.push_back(d->generator("y"));
    }
    auto chain = right_mult_chain(w, xs);
    std::string name = "D_" + std::to_string(4 * q);
    add_witnessed(name, w.induced, chain, q + 1, q + 1,
                  "the ghost number of kD_4q is q+1");
    // module-level companion row: gl(N) for N = k induced from the central C_2
    auto b = ghost_length_bounds(cache, w.induced, 4, q + 2, chain);
    ReportRow row;
    row.subject = "gl(k induced C_2->" + name + ")";
    row.claimed = detail::interval_str(q + 1, q + 1);
    row.citation = "gl(N) = gel(N) = q+1 for N induced from the central C_2";
    row.lower = b.lower;
    row.upper = b.upper;
    row.upper_method = b.upper_method;
    row.status = detail::interval_status(q + 1, q + 1, b.lower, b.upper);
    rep.rows.push_back(row);
  }
  {
    auto q8 = make_quaternion8();
    std::size_t i = q8->generator("i"), j = q8->generator("j");
    auto e = subgroup(q8, {q8->op(i, i)});
    auto w = right_mult_witness(q8, 2, e, 1);
    auto chain = right_mult_chain(w, {i, j});
    add_witnessed("Q_8", w.induced, chain, 3, 4,
                  "3 <= ghost number of kQ_8 <= 4");
  }
  return rep;
}

// gap structure at p = 3: l_1 = 1, l_2 = 3, and groups of order 27 have
// ghost number at least (r-1)(p-1)+1 = 5
inline Report preset_gaps_p3(SyzygyCache& cache, const PresetOptions& po = {}) {
  Report rep;
  {
    auto g = make_cyclic(3);
    auto gb = group_bounds_cyclic(cache, g, 3, po.window >= 0 ? po.window : 6,
                                  po.nmax >= 0 ? static_cast<std::size_t>(po.nmax) : 3);
    rep.rows.push_back(detail::finish_row(
        {"l_1 = C_3", 1, 1, "l_1 = (p-1)/2"}, gb));
  }
  {
    auto g33 = make_product(make_cyclic(3), make_cyclic(3));
    auto th = abelian_theta(g33, 3, {1, 3});
    long window = 10;
    auto gb = group_bounds_witness(cache, th.module, th.factors, window, 6);
    rep.rows.push_back(detail::finish_row(
        {"l_2 = C_3xC_3", 3, 3, "3(p-1)/2 <= l_2 <= 2p-3, both equal 3"}, gb));
  }
  // order-27 groups: certified lower bounds of at least 2p-1 = 5
  auto threshold_row = [&](const std::string& name, const GroupPtr& g,
                           const std::vector<std::size_t>& dims) {
    auto th = abelian_theta(g, 3, dims);
    BoundsOptions opt;
    opt.use_iteration = false;
    auto b = ghost_length_bounds(cache, th.module, 4, 1, th.factors, opt);
    ReportRow row;
    row.subject = name;
    row.claimed = ">=5";
    row.citation = "order p^r gives ghost number at least (r-1)(p-1)+1";
    row.lower = b.lower;
    row.upper = radical_length(regular_module(g, 3)) - 1;
    row.upper_method = "socle_bound(kG)-1";
    row.status = b.lower >= 5 ? "match" : (b.inconclusive ? "inconclusive" : "mismatch");
    rep.rows.push_back(row);
  };
  threshold_row("C_27", make_cyclic(27), {13});
  threshold_row("C_3xC_9", make_product(make_cyclic(3), make_cyclic(9)), {1, 9});
  threshold_row("C_3xC_3xC_3",
                make_product(make_product(make_cyclic(3), make_cyclic(3)), make_cyclic(3)),
                {1, 3, 3});
  return rep;
}

// ---------------------------------------------------------------------------
// configuration files

struct CheckSpec {
  std::string kind;  // series | ghost_bounds | ar | word_identities | classification_row
  std::string target;
  long window = -1;
  long nmax = -1;
  std::vector<std::string> witnesses;
  bool has_expect = false;
  std::size_t expect_lo = 0, expect_hi = 0;
  std::size_t src_line = 0;
};

struct RunConfig {
  u32 prime = 2;
  std::string group_expr;
  u64 seed = 0;
  long window = -1;  // defaults to 2 * soclen(kG)
  long nmax = -1;    // defaults to soclen(kG)
  std::vector<std::pair<std::string, std::string>> modules;  // name -> expression
  std::vector<CheckSpec> checks;
  std::string out_path;
};

namespace detail {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t line;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ConfigError(line, pos + 1, std::string("expected '") + c + "'");
    ++pos;
  }
  std::string ident() {
    skip_ws();
    std::size_t s = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '-'))
      ++pos;
    if (s == pos) throw ConfigError(line, pos + 1, "expected an identifier");
    return text.substr(s, pos - s);
  }
  long integer() {
    skip_ws();
    std::size_t s = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (s == pos) throw ConfigError(line, pos + 1, "expected an integer");
    return std::stol(text.substr(s, pos - s));
  }
  std::string quoted() {
    expect('"');
    std::size_t s = pos;
    while (pos < text.size() && text[pos] != '"') ++pos;
    if (pos == text.size()) throw ConfigError(line, s, "unterminated string");
    std::string out = text.substr(s, pos - s);
    ++pos;
    return out;
  }
};

inline GroupPtr parse_group_expr(Cursor& c) {
  std::string head = c.ident();
  if (head == "quaternion8") return make_quaternion8();
  c.expect('(');
  if (head == "cyclic") {
    long n = c.integer();
    c.expect(')');
    return make_cyclic(static_cast<std::size_t>(n));
  }
  if (head == "dihedral") {
    long n = c.integer();
    c.expect(')');
    return make_dihedral(static_cast<std::size_t>(n));
  }
  if (head == "product") {
    GroupPtr a = parse_group_expr(c);
    c.expect(',');
    GroupPtr b = parse_group_expr(c);
    c.expect(')');
    return make_product(a, b);
  }
  throw ConfigError(c.line, c.pos, "unknown group constructor '" + head + "'");
}

// element words over the generator names: x*y^2, g1^3
inline std::size_t parse_element(Cursor& c, const GroupPtr& g) {
  std::size_t acc = g->identity;
  while (true) {
    std::string name = c.ident();
    std::size_t e;
    try {
      e = g->generator(name);
    } catch (const std::exception&) {
      throw ConfigError(c.line, c.pos, "unknown generator '" + name + "'");
    }
    long exp = 1;
    if (c.peek() == '^') {
      c.expect('^');
      exp = c.integer();
    }
    acc = g->op(acc, g->power(e, exp));
    if (c.peek() == '*') {
      c.expect('*');
      continue;
    }
    break;
  }
  return acc;
}

inline GModule parse_module_expr(Cursor& c, const GroupPtr& g, u32 p,
                                 const std::map<std::string, GModule>& named);

inline GModule parse_module_call(Cursor& c, const std::string& head, const GroupPtr& g,
                                 u32 p, const std::map<std::string, GModule>& named) {
  if (head == "trivial") return trivial_module(g, p);
  if (head == "regular") return regular_module(g, p);
  if (head == "zero") return zero_module(g, p);
  c.expect('(');
  if (head == "cyclic_quotient") {
    long n = c.integer();
    c.expect(')');
    return cyclic_quotient_module(g, p, static_cast<std::size_t>(n));
  }
  if (head == "cyclic_factor") {
    long f = c.integer();
    c.expect(',');
    long n = c.integer();
    c.expect(')');
    return cyclic_factor_module(g, p, static_cast<std::size_t>(f), static_cast<std::size_t>(n));
  }
  if (head == "tensor" || head == "sum") {
    GModule a = parse_module_expr(c, g, p, named);
    c.expect(',');
    GModule b = parse_module_expr(c, g, p, named);
    c.expect(')');
    return head == "tensor" ? tensor(a, b) : direct_sum({a, b}, g, p).sum;
  }
  if (head == "dual") {
    GModule a = parse_module_expr(c, g, p, named);
    c.expect(')');
    return dual(a);
  }
  if (head == "omega") {
    GModule a = parse_module_expr(c, g, p, named);
    c.expect(',');
    long n = c.integer();
    c.expect(')');
    return omega(a, n);
  }
  if (head == "induce_trivial") {
    std::vector<std::size_t> gens{parse_element(c, g)};
    while (c.peek() == ',') {
      c.expect(',');
      gens.push_back(parse_element(c, g));
    }
    c.expect(')');
    auto e = subgroup(g, gens);
    return induce(trivial_module(e.sub, p), e).induced;
  }
  if (head == "word") {
    std::string text = c.quoted();
    c.expect(')');
    return string_module(parse_word(text), g);
  }
  if (head == "band") {
    std::string text = c.quoted();
    if (c.peek() == ',') {
      c.expect(',');
      std::string kind = c.ident();
      if (kind != "companion")
        throw ConfigError(c.line, c.pos, "unknown band automorphism '" + kind + "'");
      c.expect('(');
      std::vector<u8> coeffs{static_cast<u8>(c.integer())};
      while (c.peek() == ',') {
        c.expect(',');
        coeffs.push_back(static_cast<u8>(c.integer()));
      }
      c.expect(')');
      c.expect(')');
      return band_module(band_companion(parse_word(text), p, coeffs), g);
    }
    c.expect(')');
    return band_module(band_identity(parse_word(text)), g);
  }
  throw ConfigError(c.line, c.pos, "unknown module constructor '" + head + "'");
}

inline GModule parse_module_expr(Cursor& c, const GroupPtr& g, u32 p,
                                 const std::map<std::string, GModule>& named) {
  std::string head = c.ident();
  auto it = named.find(head);
  if (it != named.end()) return it->second;
  try {
    return parse_module_call(c, head, g, p, named);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError(c.line, c.pos, ex.what());
  }
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string lstr = raw.substr(0, raw.find('#'));
    detail::Cursor c{lstr, 0, lineno};
    if (c.eof()) continue;
    std::string head = c.ident();
    if (head == "prime") {
      long p = c.integer();
      if (p < 2 || !is_prime(static_cast<u32>(p)))
        throw ConfigError(lineno, c.pos, "prime expected");
      cfg.prime = static_cast<u32>(p);
    } else if (head == "group") {
      c.skip_ws();
      cfg.group_expr = lstr.substr(c.pos);
    } else if (head == "seed") {
      cfg.seed = static_cast<u64>(c.integer());
    } else if (head == "window") {
      cfg.window = c.integer();
      if (cfg.window < 0) throw ConfigError(lineno, c.pos, "window must be non-negative");
    } else if (head == "nmax") {
      cfg.nmax = c.integer();
      if (cfg.nmax < 0) throw ConfigError(lineno, c.pos, "nmax must be non-negative");
    } else if (head == "module") {
      std::string name = c.ident();
      c.expect('=');
      c.skip_ws();
      cfg.modules.push_back({name, lstr.substr(c.pos)});
    } else if (head == "check") {
      CheckSpec spec;
      spec.src_line = lineno;
      spec.kind = c.ident();
      if (spec.kind == "series" || spec.kind == "ghost_bounds" || spec.kind == "ar")
        spec.target = c.ident();
      else if (spec.kind == "word_identities")
        spec.target = std::to_string(c.integer());  // q
      else if (spec.kind == "classification_row")
        spec.target = c.ident();
      else
        throw ConfigError(lineno, c.pos, "unknown check kind '" + spec.kind + "'");
      while (!c.eof()) {
        std::string opt = c.ident();
        if (opt == "window")
          spec.window = c.integer();
        else if (opt == "nmax")
          spec.nmax = c.integer();
        else if (opt == "witness") {
          std::string w = c.ident();
          if (w != "central") throw ConfigError(lineno, c.pos, "unknown witness kind");
          c.expect('(');
          std::size_t s = c.pos;
          while (c.peek() != ')' && !c.eof()) ++c.pos;
          spec.witnesses.push_back(lstr.substr(s, c.pos - s));
          c.expect(')');
        } else if (opt == "expect") {
          spec.has_expect = true;
          spec.expect_lo = static_cast<std::size_t>(c.integer());
          spec.expect_hi =
              (spec.kind == "ghost_bounds") ? static_cast<std::size_t>(c.integer()) : spec.expect_lo;
        } else {
          throw ConfigError(lineno, c.pos, "unknown option '" + opt + "'");
        }
      }
      cfg.checks.push_back(std::move(spec));
    } else if (head == "out") {
      c.skip_ws();
      cfg.out_path = lstr.substr(c.pos);
      while (!cfg.out_path.empty() && (cfg.out_path.back() == ' ' || cfg.out_path.back() == '\t'))
        cfg.out_path.pop_back();
    } else {
      throw ConfigError(lineno, 1, "unknown directive '" + head + "'");
    }
  }
  if (cfg.group_expr.empty() && !cfg.checks.empty())
    throw ConfigError(lineno, 1, "no group declared");
  return cfg;
}

inline Report run_config(const RunConfig& cfg, SyzygyCache& cache) {
  Report rep;
  if (cfg.checks.empty() && cfg.modules.empty()) return rep;
  detail::Cursor gc{cfg.group_expr, 0, 0};
  GroupPtr g = detail::parse_group_expr(gc);
  std::map<std::string, GModule> named;
  for (const auto& [name, expr] : cfg.modules) {
    detail::Cursor mc{expr, 0, 0};
    named.emplace(name, detail::parse_module_expr(mc, g, cfg.prime, named));
  }
  std::size_t soclen_kg = radical_length(regular_module(g, cfg.prime));
  long def_window = cfg.window >= 0 ? cfg.window : 2 * static_cast<long>(soclen_kg);
  std::size_t def_nmax =
      cfg.nmax >= 0 ? static_cast<std::size_t>(cfg.nmax) : soclen_kg;

  for (const auto& spec : cfg.checks) {
    ReportRow row;
    row.citation = "config line " + std::to_string(spec.src_line);
    auto resolve = [&](const std::string& name) -> const GModule& {
      auto it = named.find(name);
      if (it == named.end())
        throw ConfigError(spec.src_line, 1, "unknown module '" + name + "'");
      return it->second;
    };
    if (spec.kind == "series") {
      const GModule& m = resolve(spec.target);
      row.subject = "series " + spec.target;
      std::size_t len = radical_length(m);
      row.lower = row.upper = len;
      row.upper_method = "radical series";
      row.claimed = spec.has_expect ? std::to_string(spec.expect_lo) : "-";
      row.status = !spec.has_expect ? "match"
                   : (len == spec.expect_lo ? "match" : "mismatch");
    } else if (spec.kind == "ghost_bounds") {
      const GModule& m = resolve(spec.target);
      row.subject = "ghost_bounds " + spec.target;
      std::vector<CertifiedGhost> chain;
      for (const auto& w : spec.witnesses) {
        detail::Cursor wc{w, 0, spec.src_line};
        std::size_t x = detail::parse_element(wc, g);
        chain.push_back({central_mult_ghost(m, x).map,
                         GhostCertificate::by_theorem("central multiplication x-1")});
      }
      long window = spec.window >= 0 ? spec.window : def_window;
      std::size_t nmax = spec.nmax >= 0 ? static_cast<std::size_t>(spec.nmax) : def_nmax;
      auto b = ghost_length_bounds(cache, m, window, nmax, chain);
      row.lower = b.lower;
      row.upper = b.upper;
      row.upper_method = b.upper_method;
      row.claimed =
          spec.has_expect ? detail::interval_str(spec.expect_lo, spec.expect_hi) : "-";
      row.status = b.inconclusive ? "inconclusive"
                   : !spec.has_expect
                       ? "match"
                       : detail::interval_status(spec.expect_lo, spec.expect_hi, b.lower,
                                                 b.upper);
    } else if (spec.kind == "ar") {
      const GModule& m = resolve(spec.target);
      row.subject = "ar " + spec.target;
      row.claimed = "A-R axioms";
      try {
        auto tri = heart(m);
        bool ok = !is_stably_trivial(tri.gamma);
        auto end = stable_end_radical(m, true);
        for (const auto& r : end.radical_basis) {
          FpMatrix jm(m.p(), m.dim(), m.dim());
          for (std::size_t a = 0; a < end.dim; ++a)
            if (r.at(0, a)) jm = jm + end.stable_basis[a].mat.scaled(r.at(0, a));
          ok = ok && is_stably_trivial(GMap(m, tri.gamma.cod, jm * tri.gamma.mat, false));
        }
        row.lower = row.upper = tri.heart.dim();
        row.upper_method = "heart dimension";
        row.status = ok ? "match" : "mismatch";
      } catch (const std::exception& ex) {
        row.status = "inconclusive";
        row.upper_method = ex.what();
      }
    } else if (spec.kind == "word_identities") {
      std::size_t q = static_cast<std::size_t>(std::stoul(spec.target));
      row.subject = "word_identities q=" + std::to_string(q);
      row.claimed = "classification identities";
      auto d = make_dihedral(4 * q);
      bool ok = true;
      ok = ok && is_isomorphic(band_module(band_identity(projective_band_word(q)), d),
                               regular_module(d, 2));
      Word half;
      for (std::size_t t = 0; t < q / 2; ++t) {
        half.letters.push_back(Letter::A);
        half.letters.push_back(Letter::B);
      }
      for (std::size_t t = 0; t < q / 2; ++t) {
        half.letters.push_back(Letter::AInv);
        half.letters.push_back(Letter::BInv);
      }
      std::size_t z = d->power(d->op(d->generator("x"), d->generator("y")),
                               static_cast<long long>(q));
      auto c2 = subgroup(d, {z});
      ok = ok && is_isomorphic(band_module(band_identity(half), d),
                               induce(trivial_module(c2.sub, 2), c2).induced);
      row.lower = row.upper = ok ? 1 : 0;
      row.upper_method = "module isomorphism tests";
      row.status = ok ? "match" : "mismatch";
    } else if (spec.kind == "classification_row") {
      Report table = preset_paper_table(cache);
      bool found = false;
      for (const auto& r : table.rows)
        if (r.subject == spec.target) {
          row = r;
          found = true;
          break;
        }
      if (!found)
        throw ConfigError(spec.src_line, 1, "no table row named '" + spec.target + "'");
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// serialisation

inline std::string report_to_json(const Report& rep, const std::string& preset, u64 seed) {
  nlohmann::ordered_json out;
  out["preset"] = preset;
  out["seed"] = seed;
  out["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows) {
    nlohmann::ordered_json row;
    row["subject"] = r.subject;
    row["claimed"] = r.claimed;
    row["citation"] = r.citation;
    row["lower"] = r.lower;
    row["upper"] = r.upper;
    row["method"] = r.upper_method;
    row["status"] = r.status;
    row["runtime_ms"] = r.runtime_ms;
    out["rows"].push_back(std::move(row));
  }
  return out.dump(2) + "\n";
}

inline std::string report_to_text(const Report& rep) {
  std::ostringstream os;
  for (const auto& r : rep.rows) {
    os << r.subject << ": claimed " << r.claimed << ", computed ["
       << r.lower << "," << r.upper << "] via " << r.upper_method << " -> " << r.status;
    if (!r.citation.empty()) os << "   (" << r.citation << ")";
    os << "\n";
  }
  os << (rep.any_mismatch() ? "RESULT: mismatch\n" : "RESULT: ok\n");
  return os.str();
}

}  // namespace stmod
