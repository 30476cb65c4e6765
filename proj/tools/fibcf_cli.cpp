// fibcf command line: reproducible experiments over Fibonacci word/matrix
// sequences with machine-readable reports.
//
// Exit codes: 0 all exact invariants hold; 2 usage; 3 an exact invariant
// was violated (bracketing, symmetry, tail equivalence). Band-threshold
// breaches never fail a run; they are only marked in the report.

#include <CLI11.hpp>
#include <json.hpp>

#include "fibcf/exact.hpp"
#include "fibcf/extremal.hpp"
#include "fibcf/fibseq.hpp"
#include "fibcf/io.hpp"
#include "fibcf/mat2.hpp"
#include "fibcf/words.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using fibcf::Integer;
using fibcf::IntWord;
using fibcf::Mat2Z;
using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
  std::string spec_file;
  std::string w1_inline, w2_inline;
  long thm_d_m = 0;
  std::string sign_policy = "canonical";
  std::string label;
  std::string format = "json";
  std::string out_path;
  unsigned long seed = 0;
};

void add_spec_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--spec", o.spec_file, "sequence spec JSON file");
  cmd->add_option("--w1", o.w1_inline, "inline W1 as a,b,c,d or matrix JSON");
  cmd->add_option("--w2", o.w2_inline, "inline W2 as a,b,c,d or matrix JSON");
  cmd->add_option("--det-m-family", o.thm_d_m,
                  "use the explicit determinant-m family for this m");
  cmd->add_option("--sign-policy", o.sign_policy, "canonical|raw")
      ->check(CLI::IsMember({"canonical", "raw"}));
  cmd->add_option("--label", o.label, "label recorded in reports");
}

void add_output_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
  cmd->add_option("--seed", o.seed, "seed recorded in reports");
}

Mat2Z parse_matrix_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') return fibcf::matrix_from_json(text);
  std::vector<Integer> entries;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) entries.push_back(fibcf::int_from_string(tok));
  if (entries.size() != 4)
    throw CLI::ValidationError("matrix", "expected a,b,c,d or matrix JSON");
  return Mat2Z(entries[0], entries[1], entries[2], entries[3]);
}

fibcf::SeqSpec resolve_spec(const CommonOpts& o) {
  fibcf::SeqSpec spec;
  if (!o.spec_file.empty()) {
    std::ifstream in(o.spec_file);
    if (!in) throw CLI::ValidationError("--spec", "cannot read " + o.spec_file);
    std::stringstream buf;
    buf << in.rdbuf();
    spec = fibcf::seq_spec_from_json(buf.str());
  } else if (o.thm_d_m != 0) {
    fibcf::DetMFamily fam = fibcf::det_m_family(Integer(o.thm_d_m));
    spec.W1 = fam.W1;
    spec.W2 = fam.W2;
    spec.label = "det-m-family(" + std::to_string(o.thm_d_m) + ")";
  } else if (!o.w1_inline.empty() && !o.w2_inline.empty()) {
    spec.W1 = parse_matrix_arg(o.w1_inline);
    spec.W2 = parse_matrix_arg(o.w2_inline);
  } else {
    throw CLI::ValidationError("spec", "need --spec, --det-m-family, or --w1/--w2");
  }
  if (!o.label.empty()) spec.label = o.label;
  spec.policy = o.sign_policy == "raw" ? fibcf::SignPolicy::Raw
                                       : fibcf::SignPolicy::Canonical;
  return spec;
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw CLI::ValidationError("--out", "cannot write " + o.out_path);
  out << text;
}

// letters: single 'a'/'b' runs or comma-separated positive integers
struct WordArg {
  bool abstract = false;
  std::string ab;
  IntWord letters;
};

WordArg parse_word_arg(const std::string& text) {
  WordArg w;
  bool alpha = true;
  for (char c : text)
    if (c != 'a' && c != 'b') alpha = false;
  if (alpha && !text.empty()) {
    w.abstract = true;
    w.ab = text;
    return w;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Integer v = fibcf::int_from_string(tok);
    if (v < 1) throw CLI::ValidationError("word", "letters must be positive integers");
    w.letters.push_back(v);
  }
  if (w.letters.empty()) throw CLI::ValidationError("word", "empty word");
  return w;
}

std::string int_word_text(const IntWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += fibcf::to_string(w[i]);
  }
  return out;
}

int run_fibword(const CommonOpts& o, const std::string& w1s, const std::string& w2s,
                std::optional<std::size_t> prefix, std::optional<std::size_t> term,
                bool as_json) {
  WordArg a1 = parse_word_arg(w1s);
  WordArg a2 = parse_word_arg(w2s);
  if (a1.abstract != a2.abstract)
    throw CLI::ValidationError("word", "w1 and w2 must use the same alphabet");
  std::string text;
  if (a1.abstract) {
    fibcf::FibWordSeq<fibcf::AbWord> seq(a1.ab, a2.ab);
    fibcf::AbWord w =
        term ? seq.term(*term)
             : fibcf::limit_word_prefix(a1.ab, a2.ab, prefix.value_or(0));
    text = as_json ? fibcf::word_to_json(w) : w;
  } else {
    fibcf::FibWordSeq<IntWord> seq(a1.letters, a2.letters);
    IntWord w = term ? seq.term(*term)
                     : fibcf::limit_word_prefix(a1.letters, a2.letters, prefix.value_or(0));
    text = as_json ? fibcf::word_to_json(w) : int_word_text(w);
  }
  emit(o, text.empty() ? "" : text + "\n");
  return 0;
}

int run_construct(const CommonOpts& o, std::size_t depth) {
  fibcf::SeqSpec spec = resolve_spec(o);
  fibcf::FibMatrixSeq seq = fibcf::make_sequence(spec);
  std::optional<std::size_t> period = fibcf::detect_period(seq, depth);
  fibcf::WitnessSolve ws =
      fibcf::solve_admissibility_witness(seq.w1(), seq.w2());

  std::ostringstream out;
  if (o.format == "json") {
    ordered_json head;
    head["type"] = "meta";
    head["report"] = "construct";
    head["label"] = spec.label;
    head["seed"] = o.seed;
    head["depth"] = depth;
    if (period) {
      head["period"] = *period;
      head["note"] = "bounded sequence: not extremal-eligible";
    }
    head["witness_status"] = ws.status == fibcf::WitnessSolve::Status::Found
                                 ? "found"
                                 : (ws.status == fibcf::WitnessSolve::Status::Ambiguous
                                        ? "ambiguous"
                                        : "none");
    if (ws.witness) head["witness_N"] = fibcf::matrix_to_json(ws.witness->N);
    if (!ws.reason.empty()) head["witness_reason"] = ws.reason;
    out << head.dump() << "\n";
    for (std::size_t i = 1; i <= depth; ++i) {
      ordered_json j;
      j["type"] = "record";
      j["i"] = i;
      j["det"] = fibcf::to_string(det(seq.term(i)));
      j["norm_digits"] = fibcf::to_string(norm(seq.term(i))).size();
      out << j.dump() << "\n";
    }
  } else {
    out << "i,det,norm_digits\n";
    for (std::size_t i = 1; i <= depth; ++i)
      out << i << ',' << fibcf::to_string(det(seq.term(i))) << ','
          << fibcf::to_string(norm(seq.term(i))).size() << "\n";
    if (period) out << "# bounded sequence: not extremal-eligible (period "
                    << *period << ")\n";
  }
  emit(o, out.str());
  return 0;
}

int run_expand(const CommonOpts& o, std::size_t count, std::size_t depth_cap) {
  fibcf::SeqSpec spec = resolve_spec(o);
  fibcf::EnclosureConfig cfg;
  if (depth_cap) cfg.depth_cap = depth_cap;
  fibcf::ExtremalNumber x(fibcf::make_sequence(spec), cfg);
  fibcf::QuotientRun run = x.partial_quotients(count);

  std::ostringstream out;
  if (o.format == "json") {
    ordered_json head;
    head["type"] = "meta";
    head["report"] = "expand";
    head["label"] = spec.label;
    head["seed"] = o.seed;
    head["requested"] = count;
    head["certified"] = run.quotients.size();
    head["complete"] = run.complete;
    head["depth_used"] = run.depth_used;
    out << head.dump() << "\n";
    for (std::size_t i = 0; i < run.quotients.size(); ++i) {
      ordered_json j;
      j["type"] = "record";
      j["i"] = i;
      j["q"] = fibcf::to_string(run.quotients[i]);
      out << j.dump() << "\n";
    }
  } else {
    out << "i,q\n";
    for (std::size_t i = 0; i < run.quotients.size(); ++i)
      out << i << ',' << fibcf::to_string(run.quotients[i]) << "\n";
  }
  emit(o, out.str());
  return 0;
}

int run_verify(const CommonOpts& o, std::size_t lo, std::size_t hi, long band_cap) {
  fibcf::SeqSpec spec = resolve_spec(o);
  fibcf::ExtremalNumber x(fibcf::make_sequence(spec));
  fibcf::DiagnosticsReport r = fibcf::verify_associated(x, lo, hi);
  fibcf::ReportMeta meta{spec.label, o.seed,
                         "band thresholds are configuration defaults",
                         fibcf::Rational(band_cap)};
  emit(o, o.format == "json" ? fibcf::diagnostics_to_jsonl(r, meta)
                             : fibcf::diagnostics_to_csv(r));
  return 0;
}

int run_scan_det(const CommonOpts& o, std::size_t prefix_len, std::size_t splits,
                 std::size_t quotients, long band_cap) {
  fibcf::SeqSpec spec = resolve_spec(o);
  fibcf::ExtremalNumber x(fibcf::make_sequence(spec));
  fibcf::DetScanReport r = fibcf::det_scan(x, prefix_len, splits, quotients);
  fibcf::ReportMeta meta{spec.label, o.seed, "", fibcf::Rational(band_cap)};
  emit(o, o.format == "json" ? fibcf::det_scan_to_jsonl(r, meta)
                             : fibcf::det_scan_to_csv(r));
  return r.lower_bound_ok ? 0 : 3;
}

int run_factor(const CommonOpts& o, const std::string& matrix_text) {
  Mat2Z m = parse_matrix_arg(matrix_text);
  std::vector<Integer> letters = fibcf::factor_gl2(m);
  std::ostringstream out;
  if (o.format == "json") {
    ordered_json j;
    j["matrix"] = fibcf::matrix_to_json(m);
    j["letters"] = ordered_json::array();
    for (const Integer& x : letters) j["letters"].push_back(fibcf::to_string(x));
    out << j.dump() << "\n";
  } else {
    out << int_word_text(letters) << "\n";
  }
  emit(o, out.str());
  return 0;
}

int run_conjugate(const CommonOpts& o, const std::string& matrix_text,
                  std::size_t serret_terms) {
  fibcf::SeqSpec spec = resolve_spec(o);
  fibcf::ExtremalNumber x(fibcf::make_sequence(spec));
  Mat2Z A = parse_matrix_arg(matrix_text);
  fibcf::ConjugationResult r = fibcf::conjugate_action(A, x, serret_terms);

  std::ostringstream out;
  ordered_json j;
  j["type"] = "meta";
  j["report"] = "conjugate";
  j["label"] = spec.label;
  j["seed"] = o.seed;
  j["A"] = fibcf::matrix_to_json(A);
  j["W1_conj"] = fibcf::matrix_to_json(r.number.seq().w1());
  j["W2_conj"] = fibcf::matrix_to_json(r.number.seq().w2());
  j["serret_applicable"] = r.serret_applicable;
  j["serret"] = r.serret == fibcf::Ternary::True
                    ? "true"
                    : (r.serret == fibcf::Ternary::False ? "false" : "indeterminate");
  if (o.format == "json") {
    out << j.dump() << "\n";
  } else {
    out << "serret_applicable,serret\n"
        << (r.serret_applicable ? "1" : "0") << ','
        << j["serret"].get<std::string>() << "\n";
  }
  emit(o, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact continued-fraction experiments on Fibonacci sequences of words and 2x2 integer matrices"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* fibword = app.add_subcommand("fibword", "Fibonacci word terms and limit prefixes");
  std::string fw_w1, fw_w2, fw_format = "text";
  std::optional<std::size_t> fw_prefix, fw_term;
  fibword->add_option("--w1", fw_w1, "first word (a/b letters or comma ints)")->required();
  fibword->add_option("--w2", fw_w2, "second word")->required();
  fibword->add_option("--prefix", fw_prefix, "print this prefix length of the limit word");
  fibword->add_option("--term", fw_term, "print the k-th term");
  fibword->add_option("--format", fw_format, "text|json (json: array of letters)")
      ->check(CLI::IsMember({"text", "json"}));
  fibword->add_option("--out", o.out_path, "write here instead of stdout");

  auto* construct = app.add_subcommand("construct", "generate a matrix sequence and summarize it");
  std::size_t c_depth = 12;
  construct->add_option("--depth", c_depth, "number of terms");
  add_spec_options(construct, o);
  add_output_options(construct, o);

  auto* expand = app.add_subcommand("expand", "certified partial quotients of the associated number");
  std::size_t e_count = 50, e_depth_cap = 0;
  expand->add_option("-n,--count", e_count, "quotients requested");
  expand->add_option("--depth", e_depth_cap, "enclosure depth cap");
  add_spec_options(expand, o);
  add_output_options(expand, o);

  auto* verify = app.add_subcommand("verify", "growth/approximation diagnostics over an index range");
  std::size_t v_lo = 5, v_hi = 15;
  long v_band_cap = 1000;
  verify->add_option("--lo", v_lo, "first index");
  verify->add_option("--hi", v_hi, "last index");
  verify->add_option("--band-cap", v_band_cap, "band max/min warn threshold");
  add_spec_options(verify, o);
  add_output_options(verify, o);

  auto* scan = app.add_subcommand("scan-det", "determinants and certified ratios of prefix images");
  std::size_t s_len = 50, s_splits = 8, s_quot = 100;
  long s_band_cap = 1000;
  scan->add_option("--prefix-len", s_len, "number of prefixes");
  scan->add_option("--band-cap", s_band_cap, "band max/min warn threshold");
  scan->add_option("--splits", s_splits, "check splits of w_k up to this k");
  scan->add_option("--quotients", s_quot, "certified quotients to report");
  add_spec_options(scan, o);
  add_output_options(scan, o);

  auto* factor = app.add_subcommand("factor", "factor a GL2(Z) matrix into continued-fraction atoms");
  std::string f_matrix;
  factor->add_option("--matrix", f_matrix, "a,b,c,d or matrix JSON")->required();
  add_output_options(factor, o);

  auto* conj = app.add_subcommand("conjugate", "conjugate a sequence and check tail equivalence");
  std::string cj_matrix;
  std::size_t cj_terms = 60;
  conj->add_option("--matrix", cj_matrix, "conjugator A")->required();
  conj->add_option("--terms", cj_terms, "certified quotients for the tail check");
  add_spec_options(conj, o);
  add_output_options(conj, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fibword->parsed()) {
      if (!fw_prefix && !fw_term) {
        std::cerr << "fibword: need --prefix or --term\n";
        return 2;
      }
      return run_fibword(o, fw_w1, fw_w2, fw_prefix, fw_term, fw_format == "json");
    }
    if (construct->parsed()) return run_construct(o, c_depth);
    if (expand->parsed()) return run_expand(o, e_count, e_depth_cap);
    if (verify->parsed()) return run_verify(o, v_lo, v_hi, v_band_cap);
    if (scan->parsed()) return run_scan_det(o, s_len, s_splits, s_quot, s_band_cap);
    if (factor->parsed()) return run_factor(o, f_matrix);
    if (conj->parsed()) return run_conjugate(o, cj_matrix, cj_terms);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    // exact invariant violations (bracketing, symmetry, tail equivalence)
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
