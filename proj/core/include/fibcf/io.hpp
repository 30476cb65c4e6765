#pragma once

#include "fibcf/extremal.hpp"
#include "fibcf/fibseq.hpp"
#include "fibcf/mat2.hpp"
#include "fibcf/words.hpp"

#include <string>

namespace fibcf {

/// {"rows": [["a", "b"], ["c", "d"]]}, entries as decimal strings.
std::string matrix_to_json(const Mat2Z& m);
Mat2Z matrix_from_json(const std::string& text);

/// Words as JSON arrays of letters: ["a","b","a"] over the abstract
/// alphabet, ["1","2"] with decimal-string letters over the integers.
std::string word_to_json(const AbWord& w);
std::string word_to_json(const IntWord& w);
AbWord ab_word_from_json(const std::string& text);
IntWord int_word_from_json(const std::string& text);

struct SeqSpec {
  Mat2Z W1, W2;
  SignPolicy policy = SignPolicy::Canonical;
  std::string label;
};

std::string seq_spec_to_json(const SeqSpec& spec);
SeqSpec seq_spec_from_json(const std::string& text);
FibMatrixSeq make_sequence(const SeqSpec& spec);

struct ReportMeta {
  std::string label;
  unsigned long seed = 0;
  std::string band_note;  // recorded thresholds, free-form
  /// Band acceptance threshold (max/min of the empirical band). Bands are
  /// configuration, never hard failures; the report only records the verdict.
  Rational band_cap = Rational(1000);
};

// One JSON object per line, meta record first; intervals are [lo, hi]
// rational strings. Deterministic output for fixed inputs.
std::string diagnostics_to_jsonl(const DiagnosticsReport& r, const ReportMeta& meta);
std::string diagnostics_to_csv(const DiagnosticsReport& r);
std::string det_scan_to_jsonl(const DetScanReport& r, const ReportMeta& meta);
std::string det_scan_to_csv(const DetScanReport& r);

}  // namespace fibcf
