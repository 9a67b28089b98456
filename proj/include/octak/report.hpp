#ifndef OCTAK_REPORT_HPP
#define OCTAK_REPORT_HPP

//! Command dispatch and report rendering for the octak tool. Every
//! subcommand produces a CommandReport; reports render to JSON (schema
//! "octak/1", sorted keys, two-space indent) or to markdown, and both
//! renderings are byte-deterministic for fixed inputs so they can be frozen
//! in golden files. Exit codes: 0 pass, 1 fail, 2 usage, 3 undecided.

#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abgroup.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "ktheory.hpp"
#include "omod.hpp"
#include "pythag.hpp"
#include "residue.hpp"
#include "sconstr.hpp"
#include "wreath.hpp"

namespace octak {

using json = nlohmann::json;

struct CommandReport {
  std::string command;
  json inputs = json::object();   // echo of the parsed inputs
  std::string status = "pass";    // "pass" | "fail" | "undecided"
  json payload = json::object();
  std::string summary;
  std::string markdown_body;      // optional table(s) for --md rendering
};

// ---------------------------------------------------------------------------
// Matrix text format: rows of field elements, e.g. "[[1/2,0],[1/2,1]]"
// ---------------------------------------------------------------------------

inline OMatrix parse_omatrix(const FieldDescriptor& f, const std::string& text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  auto fail = [&](const std::string& msg) {
    throw parse_error(msg, 1, static_cast<int>(pos) + 1);
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  };

  expect('[');
  std::vector<std::vector<FieldElement>> rows;
  for (;;) {
    expect('[');
    std::vector<FieldElement> row;
    for (;;) {
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && text[pos] != ',' && text[pos] != ']') ++pos;
      if (pos >= text.size()) fail("unterminated matrix row");
      std::string cell = text.substr(start, pos - start);
      try {
        row.push_back(parse_field_element(f, cell));
      } catch (const parse_error& e) {
        throw parse_error("matrix entry (row " + std::to_string(rows.size() + 1) +
                              ", entry " + std::to_string(row.size() + 1) +
                              "): " + e.what(),
                          1, static_cast<int>(start) + e.col);
      }
      if (text[pos] == ']') break;
      ++pos;  // consume ','
    }
    ++pos;  // consume ']'
    if (!rows.empty() && row.size() != rows.front().size())
      fail("matrix rows have unequal lengths");
    if (row.empty()) fail("empty matrix row");
    rows.push_back(std::move(row));
    skip_ws();
    if (pos >= text.size()) fail("expected ',' or ']' after matrix row");
    if (text[pos] == ']') break;
    if (text[pos] != ',') fail("expected ',' or ']' after matrix row");
    ++pos;
  }
  ++pos;  // consume final ']'
  skip_ws();
  if (pos != text.size()) fail("trailing characters after matrix");

  std::vector<FieldElement> entries;
  for (const auto& row : rows)
    for (const FieldElement& e : row) entries.push_back(e);
  return OMatrix(f, rows.size(), rows.front().size(), entries);
}

inline std::string to_string(const OMatrix& m) {
  std::string out = "[";
  for (size_t r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += to_string(m.at(r, c));
    }
    out += "]";
  }
  return out + "]";
}

//! Sign pattern text: rows of +/0/- joined by '/', e.g. "+0/++".
inline SignMatrix parse_sign_pattern(const std::string& text) {
  std::vector<std::string> rows;
  std::string cur;
  for (char c : text) {
    if (c == '/') {
      rows.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  rows.push_back(cur);
  return sign_matrix_from_rows(rows);
}

inline std::string pattern_to_text(const SignMatrix& m) {
  std::string out;
  for (const std::string& row : sign_matrix_to_rows(m)) {
    if (!out.empty()) out += "/";
    out += row;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string render_json(const CommandReport& r) {
  json doc = {
      {"command", r.command}, {"inputs", r.inputs},   {"payload", r.payload},
      {"schema", "octak/1"},  {"status", r.status},   {"summary", r.summary},
  };
  return doc.dump(2) + "\n";
}

inline std::string render_markdown(const CommandReport& r) {
  std::string out = "# octak " + r.command + "\n\n";
  out += "- status: " + r.status + "\n";
  for (auto it = r.inputs.begin(); it != r.inputs.end(); ++it) {
    out += "- " + it.key() + ": ";
    out += it->is_string() ? it->get<std::string>() : it->dump();
    out += "\n";
  }
  out += "\n";
  if (!r.markdown_body.empty()) out += r.markdown_body + "\n";
  out += r.summary + "\n";
  return out;
}

inline int exit_code_for(const CommandReport& r) {
  if (r.status == "pass") return 0;
  if (r.status == "undecided") return 3;
  return 1;
}

// ---------------------------------------------------------------------------
// Shared payload builders
// ---------------------------------------------------------------------------

namespace detail {

inline json refusal_json(const CofibRefusal& ref) {
  return {{"col", ref.col},
          {"message", ref.message},
          {"reason", refusal_kind_name(ref.kind)},
          {"row", ref.row}};
}

inline json certificate_json(const CofibCertificate& c) {
  json units = json::array();
  for (const FieldElement& u : c.units) units.push_back(to_string(u));
  return {{"col_to_row", c.col_to_row}, {"units", units}};
}

inline json abgroup_json(const AbGroupDescriptor& d) {
  json out = {{"exact", d.exact}, {"group", to_string(d)}};
  if (!d.bound_note.empty()) out["note"] = d.bound_note;
  return out;
}

inline json trace_json(const ReductionTrace& t) {
  json steps = json::array();
  for (const ReductionStep& s : t.steps) {
    if (const auto* e = std::get_if<EliminationStep>(&s)) {
      steps.push_back({{"after", pattern_to_text(e->after)},
                       {"before", pattern_to_text(e->before)},
                       {"column", e->column},
                       {"kind", "elimination"},
                       {"reason", e->reason}});
    } else if (const auto* c = std::get_if<ConjugationStep>(&s)) {
      steps.push_back({{"after", pattern_to_text(c->after)},
                       {"before", pattern_to_text(c->before)},
                       {"flips", c->flips},
                       {"kind", "conjugation"}});
    } else {
      const auto& p = std::get<PeelStep>(s);
      json epi;
      if (const auto* proj = std::get_if<CoordinateProjection>(&p.epi))
        epi = {{"kept", proj->kept}, {"kind", "coordinate-projection"}};
      else
        epi = {{"kind", "pattern-quotient"},
               {"pattern", pattern_to_text(std::get<PatternQuotient>(p.epi).pattern)}};
      steps.push_back({{"before", pattern_to_text(p.before)},
                       {"epi", epi},
                       {"kind", "peel"},
                       {"minor", pattern_to_text(p.minor)},
                       {"mono", pattern_to_text(p.mono.pattern)},
                       {"row", p.row}});
    }
  }
  return {{"input", pattern_to_text(t.input)},
          {"rank_one_count", t.rank_one_count},
          {"steps", steps}};
}

inline std::string trace_markdown(const ReductionTrace& t) {
  std::string out;
  size_t k = 0;
  for (const ReductionStep& s : t.steps) {
    out += std::to_string(++k) + ". ";
    if (const auto* e = std::get_if<EliminationStep>(&s))
      out += "eliminate column " + std::to_string(e->column) + " (" + e->reason +
             "): " + pattern_to_text(e->before) + " -> " + pattern_to_text(e->after);
    else if (const auto* c = std::get_if<ConjugationStep>(&s))
      out += "conjugate by diagonal signs: " + pattern_to_text(c->before) +
             " -> " + pattern_to_text(c->after);
    else {
      const auto& p = std::get<PeelStep>(s);
      out += "peel row " + std::to_string(p.row) + ": " +
             pattern_to_text(p.before) + " splits off one rank-one summand" +
             (p.minor.rows ? " leaving " + pattern_to_text(p.minor) : "");
    }
    out += "\n";
  }
  out += "\nrank-one summands: " + std::to_string(t.rank_one_count) + "\n";
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommand handlers (inputs already parsed)
// ---------------------------------------------------------------------------

inline CommandReport run_check_cofib(const OMatrix& m) {
  CommandReport r;
  r.command = "check-cofib";
  bool mono = is_monomorphism(m);
  CofibCheckResult res = is_cofibration(m);
  if (const auto* cert = std::get_if<CofibCertificate>(&res)) {
    r.payload = {{"certificate", detail::certificate_json(*cert)},
                 {"monomorphism", mono}};
    r.summary = "cofibration O(" + std::to_string(cert->n_from) + ") >-> O(" +
                std::to_string(cert->n_to) + "): unit entries on distinct rows";
  } else {
    const auto& ref = std::get<CofibRefusal>(res);
    r.status = "fail";
    r.payload = detail::refusal_json(ref);
    r.payload["monomorphism"] = mono;
    r.summary = "not a cofibration: " + ref.message;
  }
  return r;
}

inline CommandReport run_split(const OMatrix& m) {
  CommandReport r;
  r.command = "split";
  CofibCheckResult res = is_cofibration(m);
  if (const auto* ref = std::get_if<CofibRefusal>(&res)) {
    r.status = "fail";
    r.payload = detail::refusal_json(*ref);
    r.summary = "not a cofibration: " + ref->message;
    return r;
  }
  const auto& cert = std::get<CofibCertificate>(res);
  OMatrix phi = splitting_iso(cert);
  size_t rank = cokernel(cert).rank;
  r.payload = {{"coker_rank", rank}, {"iso", to_string(phi)}};
  r.summary = "splitting isomorphism straightens the inclusion onto the first " +
              std::to_string(cert.n_from) + " coordinates; complement has rank " +
              std::to_string(rank);
  return r;
}

inline CommandReport run_pushout(const OMatrix& cofib, const OMatrix& map) {
  CommandReport r;
  r.command = "pushout";
  CofibCheckResult res = is_cofibration(cofib);
  if (const auto* ref = std::get_if<CofibRefusal>(&res)) {
    r.status = "fail";
    r.payload = detail::refusal_json(*ref);
    r.summary = "the first matrix is not a cofibration: " + ref->message;
    return r;
  }
  const auto& iota = std::get<CofibCertificate>(res);
  PushoutData data = pushout(iota, map);
  size_t before = cokernel(iota).rank;
  size_t after = cokernel(data.cofib).rank;
  bool preserved = before == after;
  r.payload = {{"attach", to_string(data.attach)},
               {"coker_rank_after", after},
               {"coker_rank_before", before},
               {"cofibration", detail::certificate_json(data.cofib)},
               {"preserved", preserved}};
  if (!preserved) r.status = "fail";
  r.summary = preserved
                  ? "pushout is O(" + std::to_string(map.rows() + after) +
                        "); cokernel rank " + std::to_string(before) + " preserved"
                  : "pushout changed the cokernel rank";
  return r;
}

inline CommandReport run_gl_ab(size_t n, unsigned w) {
  CommandReport r;
  r.command = "gl-ab";
  AbGroupDescriptor d = brute_abelianization(n, w);
  r.payload = {{"abelianization", to_string(d)},
               {"group_order", wreath_group_order(w, n).get_str()}};
  r.summary = "the abelianization of the rank-" + std::to_string(n) +
              " unit-permutation group (unit order " + std::to_string(w) +
              ") is " + to_string(d);
  return r;
}

inline CommandReport run_perfect(size_t n, unsigned w) {
  CommandReport r;
  r.command = "perfect";
  std::vector<WreathElement> g = enumerate_group(w, n);
  std::vector<WreathElement> d = derived_subgroup(g);
  bool perfect = is_perfect_group(d);
  r.payload = {{"derived_order", std::to_string(d.size())},
               {"derived_perfect", perfect},
               {"group_order", std::to_string(g.size())}};
  if (!perfect) r.status = "fail";
  r.summary = perfect ? "the derived subgroup (order " + std::to_string(d.size()) +
                            ") is perfect"
                      : "the derived subgroup (order " + std::to_string(d.size()) +
                            ") is not perfect";
  return r;
}

inline CommandReport run_commutator_table(size_t n) {
  CommandReport r;
  r.command = "commutator-table";
  auto label = [](long d) {
    if (d <= -2) return std::string("<= -2");
    if (d >= 3) return std::string(">= 3");
    return std::to_string(d);
  };
  json cases = json::object();
  std::string table =
      "| j - i | checks (w=2) | mismatches (w=2) | checks (w=4) | mismatches (w=4) |\n"
      "| --- | --- | --- | --- | --- |\n";
  size_t mismatches = 0, checks = 0;
  std::vector<CommutatorCaseReport> t2 = commutator_table_check(n, 2);
  std::vector<CommutatorCaseReport> t4 = commutator_table_check(n, 4);
  for (size_t k = 0; k < t2.size(); ++k) {
    checks += t2[k].checked + t4[k].checked;
    mismatches += t2[k].mismatches + t4[k].mismatches;
    cases[label(t2[k].delta)] = {{"checks_w2", t2[k].checked},
                                 {"checks_w4", t4[k].checked},
                                 {"mismatches_w2", t2[k].mismatches},
                                 {"mismatches_w4", t4[k].mismatches}};
    table += "| " + label(t2[k].delta) + " | " + std::to_string(t2[k].checked) +
             " | " + std::to_string(t2[k].mismatches) + " | " +
             std::to_string(t4[k].checked) + " | " +
             std::to_string(t4[k].mismatches) + " |\n";
  }
  r.payload = {{"cases", cases}, {"checks", checks}, {"mismatches", mismatches}};
  if (mismatches) r.status = "fail";
  r.markdown_body = table;
  r.summary = mismatches == 0
                  ? "all " + std::to_string(checks) +
                        " commutators match the closed form, bucketed by j - i"
                  : std::to_string(mismatches) + " of " + std::to_string(checks) +
                        " commutators deviate from the closed form";
  return r;
}

inline CommandReport run_k0_finf() {
  CommandReport r;
  r.command = "k0-finf";
  K0FInfinityResult res = k0_f_infinity();
  r.payload = {{"group", to_string(res.group)},
               {"relations", res.relations.size()}};
  if (!res.group.is_trivial()) r.status = "fail";
  r.summary = "class relations [P] = 2[F(1)] and [F(2)] = [P] + [F(1)] force "
              "[F(1)] = 0, so K_0 of the residue structure is " +
              to_string(res.group);
  return r;
}

inline CommandReport run_faces(size_t n) {
  CommandReport r;
  r.command = "faces";
  std::vector<Face> faces = enumerate_faces(n);
  r.payload = {{"ambient", n}, {"count", faces.size()}};
  if (faces.size() <= 100) {
    json list = json::array();
    for (const Face& f : faces) list.push_back(face_to_string(f));
    r.payload["faces"] = list;
  }
  r.summary = "the residue module of rank " + std::to_string(n) + " has 3^" +
              std::to_string(n) + " = " + std::to_string(faces.size()) + " faces";
  return r;
}

inline CommandReport run_k0_reduce(const SignMatrix& pattern) {
  CommandReport r;
  r.command = "k0-reduce";
  if (!is_idempotent_projector(pattern))
    throw not_idempotent("the pattern is not an idempotent projector");
  ReductionTrace t = k0_reduce(pattern);
  r.payload = detail::trace_json(t);
  r.markdown_body = detail::trace_markdown(t);
  r.summary = "the image of " + pattern_to_text(t.input) + " splits as " +
              std::to_string(t.rank_one_count) + " rank-one summand" +
              (t.rank_one_count == 1 ? "" : "s") + " in " +
              std::to_string(t.steps.size()) + " certified step" +
              (t.steps.size() == 1 ? "" : "s");
  return r;
}

inline CommandReport run_k_groups(const FieldDescriptor& f, int max_degree) {
  CommandReport r;
  r.command = "k-groups";
  UnitGroupStructure u = unit_group_structure(f);
  json groups = json::object();
  std::string table = "| i | K_i |\n| --- | --- |\n";
  std::string notes;
  for (int i = 0; i <= max_degree; ++i) {
    AbGroupDescriptor d = k_group(f, i);
    groups["K" + std::to_string(i)] = detail::abgroup_json(d);
    table += "| " + std::to_string(i) + " | " + to_string(d) + " |\n";
    if (!d.exact)
      notes += "\nK_" + std::to_string(i) + " = " + to_string(d).substr(8) +
               " " + d.bound_note + "\n";
  }
  r.payload = {{"groups", groups},
               {"unit_free_rank", u.free_rank == kOmega
                                      ? json("omega")
                                      : json(u.free_rank)},
               {"unit_torsion_order", u.torsion_order}};
  r.markdown_body = table + notes;
  r.summary = "K-groups of the archimedean valuation structure on " +
              f.to_string() + " up to degree " + std::to_string(max_degree);
  return r;
}

inline CommandReport run_ah_table(long w) {
  CommandReport r;
  r.command = "ah-table";
  SpectralPage page = ah_e2_page(w, 2, 2);
  json rows = json::array();
  std::string table = "| q\\p | 0 | 1 | 2 |\n| --- | --- | --- | --- |\n";
  for (long q = 2; q >= 0; --q) {
    json cells = json::array();
    std::string line = "| " + std::to_string(q) + " |";
    for (long p = 0; p <= 2; ++p) {
      std::string cell = to_string(page.at(p, q));
      cells.push_back(cell);
      line += " " + cell + " |";
    }
    rows.push_back({{"cells", cells}, {"q", q}});
    table += line + "\n";
  }
  r.payload = {{"rows", rows}, {"w", w}, {"wprime", std::gcd(2L, w)}};
  r.markdown_body = table;
  r.summary = "homology-of-cyclic-group E2 page for unit order " +
              std::to_string(w) + " (rows q, columns p)";
  return r;
}

inline CommandReport run_pythag_factor(const FieldElement& x) {
  CommandReport r;
  r.command = "pythag-factor";
  PythagFactorization pf = pythag_factor(x);
  if (pythag_recompose(pf) != x)
    throw error("internal: factorization does not recompose to the input");
  json factors = json::array();
  std::string display = to_string(pf.unit);
  for (const auto& [prime, e] : pf.exponents) {
    factors.push_back({{"exponent", e}, {"prime", to_string(prime)}});
    display += " * (" + to_string(prime) + " / conj)^" + std::to_string(e);
  }
  r.payload = {{"factors", factors}, {"unit", to_string(pf.unit)}};
  r.summary = "norm-1 factorization: " + to_string(x) + " = " + display;
  return r;
}

inline CommandReport run_sconstr_count(size_t n, size_t rank, long w) {
  CommandReport r;
  r.command = "sconstr-count";
  SObjectCensus census = enumerate_s_objects(w, n, rank);
  bool agree = census.module_count == census.eset_count;
  r.payload = {{"agree", agree},
               {"esets", census.eset_count.get_str()},
               {"modules", census.module_count.get_str()},
               {"samples_validated", census.samples.size()}};
  if (!agree) r.status = "fail";
  r.markdown_body = "| side | count |\n| --- | --- |\n| free modules | " +
                    census.module_count.get_str() + " |\n| pointed E-sets | " +
                    census.eset_count.get_str() + " |\n";
  r.summary = agree ? "degree-" + std::to_string(n) +
                          " staircase census agrees on both sides: " +
                          census.module_count.get_str() + " objects (ranks <= " +
                          std::to_string(rank) + ", unit order " +
                          std::to_string(w) + ")"
                    : "staircase census disagrees: " +
                          census.module_count.get_str() + " module objects vs " +
                          census.eset_count.get_str() + " pointed E-set chains";
  return r;
}

// ---------------------------------------------------------------------------
// Command line front end
// ---------------------------------------------------------------------------

struct CliResult {
  int exit_code = 0;
  std::string out;  // stdout payload
  std::string err;  // stderr diagnostics
};

//! Parse and run one invocation. `args` excludes the program name.
inline CliResult run_cli(std::vector<std::string> args) {
  CliResult result;

  bool markdown = false;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--md") {
      markdown = true;
      it = args.erase(it);
    } else {
      ++it;
    }
  }

  CLI::App app{
      "octak: exact verifications for octahedral modules at archimedean "
      "places.\n"
      "Field elements: 'a/b', 'a/b+c/d*i' (Q(i)), 'a/b+c/d*sqrt(D)'.\n"
      "Matrices: rows of elements, e.g. \"[[1/2,0],[1/2,1]]\".\n"
      "Sign patterns: rows over +/0/- joined by '/', e.g. \"+0/++\".\n"
      "Global flag --md renders markdown instead of JSON.\n"
      "Environment: OCTAK_MAX_BITS caps exact-comparison refinement."};
  app.require_subcommand(1);

  std::string field_text = "Q", matrix_text, cofib_text, map_text, pattern_text,
              element_text;
  size_t n = 0, rank = 0;
  long w = 2;
  unsigned uw = 2;
  int max_degree = 2;

  CLI::App* c_check = app.add_subcommand("check-cofib", "Decide whether a matrix is a cofibration");
  c_check->add_option("--field", field_text, "Base field (Q, Q(i), Q(sqrt(D)))");
  c_check->add_option("--matrix", matrix_text, "Matrix to test")->required();

  CLI::App* c_split = app.add_subcommand("split", "Splitting isomorphism of a cofibration");
  c_split->add_option("--field", field_text, "Base field");
  c_split->add_option("--matrix", matrix_text, "Cofibration matrix")->required();

  CLI::App* c_push = app.add_subcommand("pushout", "Cobase change of a cofibration along a map");
  c_push->add_option("--field", field_text, "Base field");
  c_push->add_option("--cofib", cofib_text, "Cofibration matrix")->required();
  c_push->add_option("--map", map_text, "Attaching map with the same domain")->required();

  CLI::App* c_glab = app.add_subcommand("gl-ab", "Abelianization of the rank-n unit-permutation group");
  c_glab->add_option("--n", n, "Rank")->required();
  c_glab->add_option("--w", uw, "Unit order")->check(CLI::IsMember({2, 4}));

  CLI::App* c_perf = app.add_subcommand("perfect", "Perfection of the derived subgroup");
  c_perf->add_option("--n", n, "Rank")->required();
  c_perf->add_option("--w", uw, "Unit order")->check(CLI::IsMember({2, 4}));

  CLI::App* c_comm = app.add_subcommand("commutator-table", "Closed-form commutator identities, checked exactly");
  c_comm->add_option("--n", n, "Rank (>= 3)")->required()->check(CLI::Range(3, 64));

  app.add_subcommand("k0-finf", "K_0 of the residue structure at infinity");

  CLI::App* c_faces = app.add_subcommand("faces", "Census of sign-vector faces");
  c_faces->add_option("--n", n, "Ambient rank")->required();

  CLI::App* c_red = app.add_subcommand("k0-reduce", "Reduce an idempotent sign pattern to rank-one summands");
  c_red->add_option("--pattern", pattern_text, "Sign pattern")->required();

  CLI::App* c_kg = app.add_subcommand("k-groups", "Low-degree K-groups of the archimedean valuation structure");
  c_kg->add_option("--field", field_text, "Base field");
  c_kg->add_option("--max-degree", max_degree, "Highest degree (<= 2)")
      ->check(CLI::Range(0, 2));

  CLI::App* c_ah = app.add_subcommand("ah-table", "E2 page of the stable-homotopy spectral sequence");
  c_ah->add_option("--w", w, "Unit order")->check(CLI::IsMember({2, 4}));

  CLI::App* c_pyth = app.add_subcommand("pythag-factor", "Factor a norm-1 element of Q(i) over split primes");
  c_pyth->add_option("--x", element_text, "Element, e.g. \"3/5+4/5*i\"")->required();

  CLI::App* c_sc = app.add_subcommand("sconstr-count", "Double census of degree-n staircase objects");
  c_sc->add_option("--n", n, "Simplicial degree")->required();
  c_sc->add_option("--rank", rank, "Largest module rank")->required();
  c_sc->add_option("--w", w, "Unit order")->check(CLI::IsMember({2, 4}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.err = std::string("usage error: ") + e.what() + "\n";
    result.exit_code = 2;
    return result;
  }

  // Register the command name and input echo before any fallible work so a
  // fail/undecided report still identifies its invocation.
  CommandReport report;
  if (c_check->parsed()) {
    report.command = "check-cofib";
    report.inputs = {{"field", field_text}, {"matrix", matrix_text}};
  } else if (c_split->parsed()) {
    report.command = "split";
    report.inputs = {{"field", field_text}, {"matrix", matrix_text}};
  } else if (c_push->parsed()) {
    report.command = "pushout";
    report.inputs = {{"cofib", cofib_text}, {"field", field_text}, {"map", map_text}};
  } else if (c_glab->parsed()) {
    report.command = "gl-ab";
    report.inputs = {{"n", n}, {"w", uw}};
  } else if (c_perf->parsed()) {
    report.command = "perfect";
    report.inputs = {{"n", n}, {"w", uw}};
  } else if (c_comm->parsed()) {
    report.command = "commutator-table";
    report.inputs = {{"n", n}};
  } else if (c_faces->parsed()) {
    report.command = "faces";
    report.inputs = {{"n", n}};
  } else if (c_red->parsed()) {
    report.command = "k0-reduce";
    report.inputs = {{"pattern", pattern_text}};
  } else if (c_kg->parsed()) {
    report.command = "k-groups";
    report.inputs = {{"field", field_text}, {"max_degree", max_degree}};
  } else if (c_ah->parsed()) {
    report.command = "ah-table";
    report.inputs = {{"w", w}};
  } else if (c_pyth->parsed()) {
    report.command = "pythag-factor";
    report.inputs = {{"x", element_text}};
  } else if (c_sc->parsed()) {
    report.command = "sconstr-count";
    report.inputs = {{"n", n}, {"rank", rank}, {"w", w}};
  } else {
    report.command = "k0-finf";
  }

  auto adopt = [&report](CommandReport h) {
    report.status = std::move(h.status);
    report.payload = std::move(h.payload);
    report.summary = std::move(h.summary);
    report.markdown_body = std::move(h.markdown_body);
  };
  try {
    if (c_check->parsed()) {
      FieldDescriptor f = parse_field_descriptor(field_text);
      adopt(run_check_cofib(parse_omatrix(f, matrix_text)));
    } else if (c_split->parsed()) {
      FieldDescriptor f = parse_field_descriptor(field_text);
      adopt(run_split(parse_omatrix(f, matrix_text)));
    } else if (c_push->parsed()) {
      FieldDescriptor f = parse_field_descriptor(field_text);
      adopt(run_pushout(parse_omatrix(f, cofib_text), parse_omatrix(f, map_text)));
    } else if (c_glab->parsed()) {
      adopt(run_gl_ab(n, uw));
    } else if (c_perf->parsed()) {
      adopt(run_perfect(n, uw));
    } else if (c_comm->parsed()) {
      adopt(run_commutator_table(n));
    } else if (c_faces->parsed()) {
      adopt(run_faces(n));
    } else if (c_red->parsed()) {
      adopt(run_k0_reduce(parse_sign_pattern(pattern_text)));
    } else if (c_kg->parsed()) {
      adopt(run_k_groups(parse_field_descriptor(field_text), max_degree));
    } else if (c_ah->parsed()) {
      adopt(run_ah_table(w));
    } else if (c_pyth->parsed()) {
      adopt(run_pythag_factor(
          parse_field_element(FieldDescriptor::gaussian(), element_text)));
    } else if (c_sc->parsed()) {
      adopt(run_sconstr_count(n, rank, w));
    } else {
      adopt(run_k0_finf());
    }
  } catch (const parse_error& e) {
    result.err = std::string("usage error: ") + e.what() + "\n";
    result.exit_code = 2;
    return result;
  } catch (const budget_exceeded& e) {
    result.err = std::string("usage error: ") + e.what() + "\n";
    result.exit_code = 2;
    return result;
  } catch (const precision_exhausted& e) {
    report.status = "undecided";
    report.payload = {{"bits", e.bits}, {"message", e.what()}};
    report.summary = std::string("undecided: ") + e.what();
  } catch (const error& e) {
    report.status = "fail";
    report.payload = {{"message", e.what()}};
    report.summary = e.what();
  }

  result.out = markdown ? render_markdown(report) : render_json(report);
  result.exit_code = exit_code_for(report);
  return result;
}

}  // namespace octak

#endif
