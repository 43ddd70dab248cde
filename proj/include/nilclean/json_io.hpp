#pragma once

/// JSON views of reports, witnesses and certificates. Key order is fixed;
/// reruns with identical inputs differ only in timing_ms fields. Elements
/// and matrices serialize as canonical indices (matrices additionally carry
/// their entry grid of base-ring indices; the flat index is null when the
/// matrix-ring order does not fit in 64 bits).

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "nilclean/nilclean.hpp"
#include "nilclean/ring.hpp"
#include "nilclean/theorem.hpp"

namespace nilclean {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
Json opt_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace detail

inline Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::uint32_t i = 0; i < m.dimension(); ++i) {
        Json row = Json::array();
        for (std::uint32_t j = 0; j < m.dimension(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    Json out;
    try {
        out["index"] = matrix_to_index(m);
    } catch (const CapExceeded&) {
        out["index"] = nullptr;
    }
    out["entries"] = std::move(rows);
    return out;
}

inline Json matrix_element_json(const RingHandle& base, std::uint32_t n, std::uint64_t index) {
    return matrix_json(matrix_from_index(base, n, index));
}

inline Json witness_json(const MatrixWitness& wit) {
    Json out;
    out["method"] = witness_method_name(wit.method);
    out["target"] = matrix_json(wit.target);
    out["e"] = matrix_json(wit.e);
    out["w"] = matrix_json(wit.w);
    out["w_nil_index"] = wit.w_nil_index;
    return out;
}

inline Json certificate_json(const RingHandle& base, std::uint32_t n,
                             const NonNilCleanCertificate& cert) {
    Json out;
    out["type"] = "non_nil_clean_element";
    out["element"] = matrix_element_json(base, n, cert.target);
    out["idempotents_scanned"] = cert.idempotents_scanned;
    return out;
}

inline Json decision_json(const DecisionReport& rep, const RingHandle& base) {
    Json out;
    out["ring"] = rep.ring_spec;
    out["ring_order"] = rep.ring_order;
    out["n"] = rep.n;
    out["method"] = rep.method;
    out["abelian"] = detail::opt_json(rep.abelian);
    Json radical;
    radical["size"] = detail::opt_json(rep.radical_size);
    radical["nil_index"] = detail::opt_json(rep.radical_nil_index);
    out["radical"] = std::move(radical);
    out["quotient_boolean"] = detail::opt_json(rep.rj_boolean);
    out["quotient_non_idempotent_witness"] = detail::opt_json(rep.rj_non_idempotent_witness);
    out["matrix_radical_nil"] = detail::opt_json(rep.mn_radical_nil);
    out["matrix_radical_nil_bound"] = detail::opt_json(rep.mn_nil_bound);
    out["nil_clean"] = rep.nil_clean;
    out["theorem_verdict"] = detail::opt_json(rep.theorem_verdict);
    out["oracle_verdict"] = detail::opt_json(rep.oracle_verdict);
    out["oracle_skip_reason"] = detail::opt_json(rep.oracle_skip_reason);
    if (rep.certificate_element) {
        Json cert;
        cert["type"] = "non_nil_clean_element";
        cert["element"] = matrix_element_json(base, rep.n, *rep.certificate_element);
        cert["idempotents_scanned"] = detail::opt_json(rep.certificate_idempotents_scanned);
        out["certificate"] = std::move(cert);
    } else if (rep.elements_decomposed) {
        Json cert;
        cert["type"] = "all_decomposed";
        cert["count"] = *rep.elements_decomposed;
        out["certificate"] = std::move(cert);
    } else if (!rep.nil_clean && rep.rj_boolean && !*rep.rj_boolean) {
        // theorem-path negative: the failure evidence is the quotient element
        // that is not idempotent
        Json cert;
        cert["type"] = "non_boolean_quotient";
        cert["witness"] = detail::opt_json(rep.rj_non_idempotent_witness);
        out["certificate"] = std::move(cert);
    } else if (!rep.nil_clean && rep.mn_radical_nil && !*rep.mn_radical_nil) {
        Json cert;
        cert["type"] = "radical_not_nil";
        out["certificate"] = std::move(cert);
    } else {
        out["certificate"] = nullptr;
    }
    out["oracle_visits"] = rep.oracle_visits;
    out["timing_ms"] = rep.timing_ms;
    return out;
}

inline Json survey_json(const SurveyReport& rep) {
    Json rows = Json::array();
    for (const SurveyRow& row : rep.rows) {
        Json r;
        r["m"] = row.m;
        r["power_of_two"] = row.power_of_two;
        r["nil_clean"] = row.power_of_two;  // proven equal to every verdict below
        r["crt_verdict"] = row.crt_verdict;
        r["theorem_verdict"] = row.theorem_verdict;
        r["oracle_verdict"] = detail::opt_json(row.oracle_verdict);
        r["cross_checked"] = row.cross_checked;
        rows.push_back(std::move(r));
    }
    Json out;
    out["n"] = rep.n;
    out["max_m"] = rep.m_max;
    out["rows"] = std::move(rows);
    out["all_consistent"] = rep.all_consistent;
    return out;
}

inline Json ideal_json(const Ideal& I) {
    Json out;
    out["size"] = I.size();
    out["nil_index"] = detail::opt_json(I.nil_index);
    if (I.size() <= 256) {
        Json elems = Json::array();
        for (std::uint64_t e : I.elements) elems.push_back(e);
        out["elements"] = std::move(elems);
    } else {
        out["elements"] = nullptr;
    }
    return out;
}

inline Json cross_validation_json(const CrossValidationSummary& summary) {
    Json entries = Json::array();
    for (const auto& e : summary.entries) {
        Json row;
        row["ring"] = e.spec;
        row["n"] = e.n;
        row["theorem_verdict"] = detail::opt_json(e.theorem_verdict);
        row["oracle_verdict"] = detail::opt_json(e.oracle_verdict);
        row["status"] = e.status;
        entries.push_back(std::move(row));
    }
    Json out;
    out["entries"] = std::move(entries);
    out["cross_checked"] = summary.cross_checked;
    out["discrepancies"] = summary.discrepancies;
    return out;
}

inline Json verify_json(const VerifySummary& summary) {
    Json results = Json::array();
    for (const SuiteResult& res : summary.results) {
        Json row;
        row["suite"] = res.suite;
        row["subject"] = res.subject;
        row["pass"] = res.pass;
        row["detail"] = res.detail;
        results.push_back(std::move(row));
    }
    Json out;
    out["results"] = std::move(results);
    out["total"] = summary.total;
    out["passed"] = summary.passed;
    out["all_pass"] = summary.all_pass;
    return out;
}

}  // namespace nilclean
