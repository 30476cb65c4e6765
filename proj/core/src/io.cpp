#include "fibcf/io.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace fibcf {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json matrix_json(const Mat2Z& m) {
  ordered_json rows = ordered_json::array();
  rows.push_back({to_string(m.a), to_string(m.b)});
  rows.push_back({to_string(m.c), to_string(m.d)});
  return ordered_json{{"rows", rows}};
}

Mat2Z matrix_from(const ordered_json& j) {
  if (!j.contains("rows")) throw std::invalid_argument("matrix JSON needs \"rows\"");
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
    throw std::invalid_argument("matrix JSON needs two rows of two entries");
  auto entry = [](const ordered_json& v) {
    if (v.is_string()) return int_from_string(v.get<std::string>());
    if (v.is_number_integer()) return int_from_string(std::to_string(v.get<long long>()));
    throw std::invalid_argument("matrix entries must be decimal strings");
  };
  return Mat2Z(entry(rows[0][0]), entry(rows[0][1]), entry(rows[1][0]), entry(rows[1][1]));
}

ordered_json interval_json(const RationalInterval& I) {
  return ordered_json::array({to_string(I.lo), to_string(I.hi)});
}

std::string policy_name(SignPolicy p) {
  return p == SignPolicy::Canonical ? "canonical" : "raw";
}

SignPolicy policy_from(const std::string& s) {
  if (s == "canonical") return SignPolicy::Canonical;
  if (s == "raw") return SignPolicy::Raw;
  throw std::invalid_argument("unknown sign_policy: " + s);
}

}  // namespace

std::string matrix_to_json(const Mat2Z& m) { return matrix_json(m).dump(); }

Mat2Z matrix_from_json(const std::string& text) {
  return matrix_from(ordered_json::parse(text));
}

std::string word_to_json(const AbWord& w) {
  ordered_json arr = ordered_json::array();
  for (char c : w) arr.push_back(std::string(1, c));
  return arr.dump();
}

std::string word_to_json(const IntWord& w) {
  ordered_json arr = ordered_json::array();
  for (const Integer& x : w) arr.push_back(to_string(x));
  return arr.dump();
}

AbWord ab_word_from_json(const std::string& text) {
  ordered_json arr = ordered_json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("word JSON must be an array");
  AbWord w;
  for (const auto& v : arr) {
    std::string s = v.get<std::string>();
    if (s != "a" && s != "b")
      throw std::invalid_argument("abstract letters must be \"a\" or \"b\"");
    w += s;
  }
  return w;
}

IntWord int_word_from_json(const std::string& text) {
  ordered_json arr = ordered_json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("word JSON must be an array");
  IntWord w;
  for (const auto& v : arr) w.push_back(int_from_string(v.get<std::string>()));
  return w;
}

std::string seq_spec_to_json(const SeqSpec& spec) {
  ordered_json j;
  j["W1"] = matrix_json(spec.W1);
  j["W2"] = matrix_json(spec.W2);
  j["sign_policy"] = policy_name(spec.policy);
  j["label"] = spec.label;
  return j.dump(2);
}

SeqSpec seq_spec_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  SeqSpec spec;
  spec.W1 = matrix_from(j.at("W1"));
  spec.W2 = matrix_from(j.at("W2"));
  if (j.contains("sign_policy")) spec.policy = policy_from(j.at("sign_policy"));
  if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  return spec;
}

FibMatrixSeq make_sequence(const SeqSpec& spec) {
  return FibMatrixSeq(spec.W1, spec.W2, spec.policy, spec.label);
}

std::string diagnostics_to_jsonl(const DiagnosticsReport& r, const ReportMeta& meta) {
  std::ostringstream out;
  ordered_json head;
  head["type"] = "meta";
  head["report"] = "verify";
  head["label"] = meta.label;
  head["seed"] = meta.seed;
  head["gamma_ref"] = r.gamma_ref;
  head["enclosure_depth"] = r.enclosure_depth;
  head["exponent_min"] = r.exponent_min;
  head["exponent_max"] = r.exponent_max;
  head["product_band"] = interval_json(r.product_band);
  head["product_band_ratio"] = to_string(r.product_band_ratio);
  head["band_cap"] = to_string(meta.band_cap);
  head["band_within_cap"] =
      r.product_band.lo > 0 && r.product_band_ratio < meta.band_cap;
  if (r.theta) head["theta"] = interval_json(*r.theta);
  if (!meta.band_note.empty()) head["band_note"] = meta.band_note;
  out << head.dump() << "\n";
  for (const DiagRecord& rec : r.records) {
    ordered_json j;
    j["type"] = "record";
    j["i"] = rec.i;
    j["norm_digits"] = rec.norm_digits;
    j["exponent_ratio"] = rec.exponent_ratio;
    j["approx_product"] = interval_json(rec.approx_product);
    j["det"] = to_string(rec.det_value);
    j["growth_ratio"] = to_string(rec.growth_ratio);
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string diagnostics_to_csv(const DiagnosticsReport& r) {
  std::ostringstream out;
  out << "i,norm_digits,exponent_ratio,approx_product_lo,approx_product_hi,det,growth_ratio\n";
  for (const DiagRecord& rec : r.records) {
    out << rec.i << ',' << rec.norm_digits << ',' << rec.exponent_ratio << ','
        << to_string(rec.approx_product.lo) << ',' << to_string(rec.approx_product.hi)
        << ',' << to_string(rec.det_value) << ',' << to_string(rec.growth_ratio) << "\n";
  }
  return out.str();
}

std::string det_scan_to_jsonl(const DetScanReport& r, const ReportMeta& meta) {
  std::ostringstream out;
  ordered_json head;
  head["type"] = "meta";
  head["report"] = "scan-det";
  head["label"] = meta.label;
  head["seed"] = meta.seed;
  head["enclosure_depth"] = r.enclosure_depth;
  head["max_abs_det"] = to_string(r.max_abs_det);
  head["dets_bounded"] = r.dets_bounded;
  head["lower_bound_ok"] = r.lower_bound_ok;
  head["factorization_ok"] = r.factorization_ok;
  head["rho_band"] = interval_json(r.rho_band);
  head["rho_band_ratio"] = to_string(r.rho_band_ratio);
  head["band_cap"] = to_string(meta.band_cap);
  head["band_within_cap"] = r.rho_band.lo > 0 && r.rho_band_ratio < meta.band_cap;
  head["split_cap"] = r.split_cap;
  head["split_band"] = ordered_json::array(
      {to_string(r.split_band_lo), to_string(r.split_band_hi)});
  head["certified_quotients"] = r.certified_quotients;
  head["max_partial_quotient"] = to_string(r.max_partial_quotient);
  if (!meta.band_note.empty()) head["band_note"] = meta.band_note;
  out << head.dump() << "\n";
  for (const DetScanRecord& rec : r.records) {
    ordered_json j;
    j["type"] = "record";
    j["i"] = rec.i;
    j["det"] = to_string(rec.det_value);
    j["norm"] = to_string(rec.norm_value);
    j["rho"] = interval_json(rec.rho);
    j["lower_bound_value"] = to_string(rec.lower_bound_value);
    j["m_factor"] = to_string(rec.m_factor);
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string det_scan_to_csv(const DetScanReport& r) {
  std::ostringstream out;
  out << "i,det,norm,rho_lo,rho_hi,lower_bound_value,m_factor\n";
  for (const DetScanRecord& rec : r.records) {
    out << rec.i << ',' << to_string(rec.det_value) << ',' << to_string(rec.norm_value)
        << ',' << to_string(rec.rho.lo) << ',' << to_string(rec.rho.hi) << ','
        << to_string(rec.lower_bound_value) << ',' << to_string(rec.m_factor) << "\n";
  }
  return out.str();
}

}  // namespace fibcf
