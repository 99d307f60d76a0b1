#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypsign/certificates.hpp"
#include "hypsign/deform.hpp"
#include "hypsign/proofcheck.hpp"
#include "hypsign/reference.hpp"
#include "hypsign/search.hpp"

namespace hypsign {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTableSchema = "hypsign.table/1";
inline constexpr const char* kCertificatesSchema = "hypsign.certificates/1";
inline constexpr const char* kTraceSchema = "hypsign.trace/1";
inline constexpr const char* kProofcheckSchema = "hypsign.proofcheck/1";
inline constexpr const char* kSearchSchema = "hypsign.search/1";

/// {schema, d, c, theorem_filter, cells: [{sp, case, status, witness_roots,
/// samples_used}]}. Roots are exact strings, so table_from_json(table_to_json
/// (t)) reproduces t.
Json table_to_json(const ClassificationTable& table);
/// Throws std::invalid_argument on schema violations.
ClassificationTable table_from_json(const Json& j);

/// Summary rows (sign pattern, realized cases, cases without witness)
/// followed by one row per cell with its witness roots.
std::string render_markdown(const ClassificationTable& table, int precision = 12);
std::string render_csv(const ClassificationTable& table, int precision = 12);

Json diff_to_json(const TableDiff& diff);
std::string render_diff(const TableDiff& diff);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);
Json report_to_json(const CertificateReport& rep);
Json certificates_to_json(const std::vector<Certificate>& certs);
std::vector<Certificate> certificates_from_json(const Json& j);

Json search_to_json(const SignPattern& sp, const InterleavingCase& kase, const SearchResult& res, std::uint64_t seed,
                    std::uint64_t budget);

/// Root list of a witness document: a search result, a table cell, a trace
/// document or a plain {roots: [...]} object.
std::vector<Rational> witness_roots_from_json(const Json& j);

/// Trace document with exact inputs (roots, step, t_max, stop rule) and
/// events; re-tracing the stored inputs reproduces the events.
Json path_to_json(const DeformationPath& path, const std::vector<Rational>& roots, const std::string& step_id,
                  const TraceOptions& opts, int precision = 12);

Json identity_to_json(const IdentityClaim& claim, bool pass);
Json sign_report_to_json(const ParametricFamily& fam, const SignReport& rep);

Json roots_to_json(std::span<const Rational> roots);
std::vector<Rational> roots_from_json(const Json& j);

}  // namespace hypsign
