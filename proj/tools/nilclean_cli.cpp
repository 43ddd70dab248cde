// Command-line front end: parse ring specs, run decisions, factorizations,
// radical reports, the Z/m survey, and the verification suites. JSON is the
// primary output (--text renders the same data); identical inputs produce
// byte-identical JSON except for timing_ms. NILCLEAN_THREADS overrides the
// worker count (0 = sequential).
//
// Exit codes: 0 success, 1 parse/config error, 2 budget or cap exceeded,
// 3 method discrepancy or property violation.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nilclean/json_io.hpp>
#include <nilclean/nilclean.hpp>
#include <nilclean/predicates.hpp>
#include <nilclean/radical.hpp>
#include <nilclean/ring.hpp>
#include <nilclean/ring_spec.hpp>
#include <nilclean/theorem.hpp>

namespace {

using nilclean::Json;

struct RunContext {
    std::string command;
    Json inputs = Json::object();
    bool text = false;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
};

std::uint64_t elapsed_ms(const RunContext& ctx) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - ctx.started)
                                          .count());
}

void emit_json(const RunContext& ctx, Json outputs) {
    Json report;
    report["schema_version"] = "1";
    report["command"] = ctx.command;
    report["inputs"] = ctx.inputs;
    report["outputs"] = std::move(outputs);
    report["timing_ms"] = elapsed_ms(ctx);
    std::cout << report.dump(2) << "\n";
}

int emit_error(const RunContext& ctx, const std::string& type, const std::string& message,
               Json extra, int exit_code) {
    Json report;
    report["schema_version"] = "1";
    report["command"] = ctx.command;
    report["inputs"] = ctx.inputs;
    Json error;
    error["type"] = type;
    error["message"] = message;
    for (auto& [key, value] : extra.items()) error[key] = value;
    report["error"] = std::move(error);
    report["timing_ms"] = elapsed_ms(ctx);
    std::cout << report.dump(2) << "\n";
    return exit_code;
}

std::vector<std::vector<std::uint64_t>> parse_matrix_literal(const std::string& text) {
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::uint64_t> row;
    std::string token;
    auto flush_token = [&](std::size_t at) {
        std::size_t begin = token.find_first_not_of(" \t");
        if (begin == std::string::npos)
            throw nilclean::ParseError("matrix literal: empty entry", at, {"nat"});
        std::size_t end = token.find_last_not_of(" \t");
        std::string digits = token.substr(begin, end - begin + 1);
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw nilclean::ParseError("matrix literal: entry is not a number", at, {"nat"});
        row.push_back(std::stoull(digits));
        token.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == ',') {
            flush_token(i);
        } else if (c == ';') {
            flush_token(i);
            rows.push_back(std::move(row));
            row.clear();
        } else {
            token += c;
        }
    }
    flush_token(text.size());
    rows.push_back(std::move(row));
    return rows;
}

nilclean::Matrix matrix_from_literal(const nilclean::RingHandle& base, std::uint32_t n,
                                     const std::string& literal) {
    auto rows = parse_matrix_literal(literal);
    if (rows.size() != n)
        throw nilclean::ParseError("matrix literal has " + std::to_string(rows.size()) +
                                       " rows, expected " + std::to_string(n),
                                   0, {"n rows"});
    nilclean::Matrix m(base, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw nilclean::ParseError("matrix row " + std::to_string(i) + " has " +
                                           std::to_string(rows[i].size()) +
                                           " entries, expected " + std::to_string(n),
                                       0, {"n entries"});
        for (std::uint32_t j = 0; j < n; ++j) {
            if (rows[i][j] >= base->order())
                throw nilclean::ParseError("matrix entry " + std::to_string(rows[i][j]) +
                                               " is out of range for " + base->spec_string(),
                                           0, {"index below ring order"});
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

std::vector<std::string> load_corpus(const std::string& name) {
    if (name == "default") return nilclean::default_corpus();
    std::ifstream in(name);
    if (!in) throw nilclean::RingError("cannot open corpus file " + name);
    std::vector<std::string> specs;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        specs.push_back(line.substr(begin, end - begin + 1));
    }
    return specs;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int run_decide(RunContext& ctx, const std::string& spec, std::uint32_t n,
               const std::string& method, std::uint64_t budget, bool first_found) {
    auto ring = nilclean::parse_ring_spec(spec);
    nilclean::DecisionReport rep = nilclean::decide_matrix_nil_clean(
        ring, n, nilclean::decide_method_from_name(method), budget, first_found);
    if (ctx.text) {
        std::cout << "M" << n << "(" << rep.ring_spec << "): nil-clean = "
                  << yesno(rep.nil_clean) << " [" << rep.method << "]\n";
        if (rep.abelian) std::cout << "  abelian: " << yesno(*rep.abelian) << "\n";
        if (rep.radical_size)
            std::cout << "  |J| = " << *rep.radical_size
                      << ", nil index = " << *rep.radical_nil_index << "\n";
        if (rep.rj_boolean)
            std::cout << "  R/J Boolean: " << yesno(*rep.rj_boolean) << "\n";
        if (rep.certificate_element)
            std::cout << "  certificate element index: " << *rep.certificate_element << "\n";
        if (rep.elements_decomposed)
            std::cout << "  all " << *rep.elements_decomposed << " elements decomposed\n";
    } else {
        Json outputs;
        outputs["decision"] = nilclean::decision_json(rep, ring);
        emit_json(ctx, std::move(outputs));
    }
    return 0;
}

int run_decompose(RunContext& ctx, const std::string& spec, std::uint32_t n,
                  const std::string& literal, const std::string& method,
                  std::uint64_t budget) {
    auto ring = nilclean::parse_ring_spec(spec);
    nilclean::Matrix target = matrix_from_literal(ring, n, literal);

    auto emit_witness = [&](const nilclean::MatrixWitness& wit) {
        if (ctx.text) {
            std::cout << "decomposed via " << nilclean::witness_method_name(wit.method)
                      << ": W^" << wit.w_nil_index << " = 0\n";
        } else {
            Json outputs;
            outputs["witness"] = nilclean::witness_json(wit);
            outputs["certificate"] = nullptr;
            outputs["refusal"] = nullptr;
            emit_json(ctx, std::move(outputs));
        }
        return 0;
    };
    auto emit_certificate = [&](const nilclean::NonNilCleanCertificate& cert) {
        if (ctx.text) {
            std::cout << "not nil-clean: no idempotent works (scanned "
                      << cert.idempotents_scanned << ")\n";
        } else {
            Json outputs;
            outputs["witness"] = nullptr;
            outputs["certificate"] = nilclean::certificate_json(ring, n, cert);
            outputs["refusal"] = nullptr;
            emit_json(ctx, std::move(outputs));
        }
        return 0;
    };
    auto run_brute = [&]() {
        auto mn = nilclean::MatrixRing::make(ring, n);
        nilclean::Element element(mn, nilclean::matrix_to_index(target));
        nilclean::DecomposeOutcome out = nilclean::decompose_bruteforce(element, budget);
        if (auto* wit = std::get_if<nilclean::NilCleanWitness>(&out)) {
            nilclean::MatrixWitness mw{target, nilclean::matrix_from_index(ring, n, wit->e),
                                       nilclean::matrix_from_index(ring, n, wit->w),
                                       wit->w_nil_index, wit->method};
            return emit_witness(mw);
        }
        return emit_certificate(std::get<nilclean::NonNilCleanCertificate>(out));
    };

    if (method == "brute") return run_brute();
    try {
        return emit_witness(nilclean::decompose_matrix_structured(target));
    } catch (const nilclean::NonBooleanQuotient& refusal) {
        if (method == "auto") return run_brute();
        if (ctx.text) {
            std::cout << "structured refusal: quotient " << refusal.quotient_spec
                      << " is not Boolean (witness element " << refusal.witness << ")\n";
        } else {
            Json outputs;
            outputs["witness"] = nullptr;
            outputs["certificate"] = nullptr;
            Json ref;
            ref["type"] = "non_boolean_quotient";
            ref["quotient"] = refusal.quotient_spec;
            ref["witness"] = refusal.witness;
            outputs["refusal"] = std::move(ref);
            emit_json(ctx, std::move(outputs));
        }
        return 0;
    }
}

int run_radical(RunContext& ctx, const std::string& spec) {
    auto ring = nilclean::parse_ring_spec(spec);
    const nilclean::Ideal& J = nilclean::jacobson_radical(ring);
    const nilclean::StructuredCache& sc = nilclean::structured_cache(ring);
    std::optional<nilclean::Ideal> js;
    if (ring->order() <= nilclean::kDefaultLatticeCap) js = nilclean::j_star(ring);

    if (ctx.text) {
        std::cout << spec << ": |J| = " << J.size() << ", nil index = "
                  << (J.nil_index ? std::to_string(*J.nil_index) : "none")
                  << ", quotient order " << sc.quotient->order() << " (Boolean: "
                  << yesno(sc.quotient_boolean) << ")\n";
        if (js) std::cout << "  |J*| = " << js->size() << "\n";
    } else {
        Json outputs;
        outputs["ring"] = ring->spec_string();
        outputs["ring_order"] = ring->order();
        outputs["jacobson"] = nilclean::ideal_json(J);
        outputs["j_star"] = js ? nilclean::ideal_json(*js) : Json(nullptr);
        outputs["quotient_order"] = sc.quotient->order();
        outputs["quotient_boolean"] = sc.quotient_boolean;
        emit_json(ctx, std::move(outputs));
    }
    return 0;
}

int run_survey(RunContext& ctx, std::uint64_t max_m, std::uint32_t n, std::uint64_t budget) {
    nilclean::SurveyReport rep = nilclean::survey_zm(max_m, n, budget);
    if (ctx.text) {
        std::cout << "m | nil-clean | cross-checked\n";
        for (const auto& row : rep.rows)
            std::cout << row.m << " | " << yesno(row.power_of_two) << " | "
                      << yesno(row.cross_checked) << "\n";
    } else {
        emit_json(ctx, nilclean::survey_json(rep));
    }
    return 0;
}

int run_verify(RunContext& ctx, const std::string& corpus_name, std::uint32_t n_max,
               std::uint64_t budget, std::uint64_t lift_samples) {
    std::vector<std::string> corpus = load_corpus(corpus_name);
    nilclean::VerifySummary summary =
        nilclean::run_verification(corpus, budget, n_max, lift_samples);
    if (ctx.text) {
        for (const auto& res : summary.results)
            std::cout << (res.pass ? "PASS" : "FAIL") << "  " << res.suite << "  "
                      << res.subject << "  (" << res.detail << ")\n";
        std::cout << summary.passed << "/" << summary.total << " suites passed\n";
    } else {
        emit_json(ctx, nilclean::verify_json(summary));
    }
    return summary.all_pass ? 0 : 3;
}

int run_check_ring(RunContext& ctx, const std::string& spec, std::uint64_t cap) {
    auto ring = nilclean::parse_ring_spec(spec);
    nilclean::AxiomsReport rep = nilclean::ring_axioms_check(*ring, cap);
    if (ctx.text) {
        std::cout << spec << ": " << (rep.passed ? "all ring axioms hold" : "FAILED " + rep.axiom)
                  << "\n";
    } else {
        Json outputs;
        outputs["ring"] = ring->spec_string();
        outputs["ring_order"] = ring->order();
        outputs["passed"] = rep.passed;
        if (rep.passed) {
            outputs["violation"] = nullptr;
        } else {
            Json violation;
            violation["axiom"] = rep.axiom;
            violation["indices"] = rep.indices;
            outputs["violation"] = std::move(violation);
        }
        emit_json(ctx, std::move(outputs));
    }
    return rep.passed ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-ring nil-clean decision toolkit"};
    app.require_subcommand(1);

    RunContext ctx;

    // each subcommand binds its own variables; sharing them would let one
    // command's default bleed into another's
    std::string ring_spec, corpus_name = "default";
    std::string decide_method = "auto", decompose_method = "auto", matrix_literal;
    std::uint32_t n = 2;
    std::uint64_t decide_budget = nilclean::kDefaultOracleBudget;
    std::uint64_t decompose_budget = nilclean::kDefaultOracleBudget;
    std::uint64_t survey_budget = nilclean::kDefaultOracleBudget;
    std::uint64_t verify_budget = nilclean::kVerifyBudget;
    bool first_found = false, text_mode = false;
    std::uint64_t axioms_cap = nilclean::kDefaultAxiomsCap;
    std::uint32_t n_max = 3;
    std::uint64_t lift_samples = 1000;

    auto* decide = app.add_subcommand("decide", "decide nil-cleanness of M_n(R)");
    decide->add_option("--ring", ring_spec, "ring spec")->required();
    decide->add_option("-n", n, "matrix dimension");
    decide->add_option("--method", decide_method, "auto|theorem|brute|both");
    decide->add_option("--budget", decide_budget, "oracle visit budget");
    decide->add_flag("--first-found", first_found, "report the first failure in scan order");

    auto* decompose = app.add_subcommand("decompose", "factor one matrix as E + W");
    decompose->add_option("--ring", ring_spec, "base ring spec")->required();
    decompose->add_option("-n", n, "matrix dimension");
    decompose->add_option("--matrix", matrix_literal, "rows ';', entries ','")->required();
    decompose->add_option("--method", decompose_method, "auto|structured|brute");
    decompose->add_option("--budget", decompose_budget, "oracle visit budget");

    auto* radical = app.add_subcommand("radical", "radical and quotient facts");
    radical->add_option("--ring", ring_spec, "ring spec")->required();

    auto* survey = app.add_subcommand("survey", "nil-cleanness of M_n(Z/m)");
    std::uint64_t max_m = 16;
    survey->add_option("--max-m", max_m, "largest modulus");
    survey->add_option("-n", n, "matrix dimension");
    survey->add_option("--budget", survey_budget, "oracle visit budget");

    auto* verify = app.add_subcommand("verify", "run every suite over a corpus");
    verify->add_option("--corpus", corpus_name, "'default' or a file of ring specs");
    verify->add_option("-n", n_max, "largest matrix dimension");
    verify->add_option("--budget", verify_budget, "oracle visit budget");
    verify->add_option("--lift-samples", lift_samples, "random lifts per ring");

    auto* check_ring = app.add_subcommand("check-ring", "exhaustive ring-axioms check");
    check_ring->add_option("--ring", ring_spec, "ring spec")->required();
    check_ring->add_option("--cap", axioms_cap, "axioms-check cap");

    for (auto* cmd : {decide, decompose, radical, survey, verify, check_ring}) {
        cmd->add_flag("--text", text_mode, "human-readable output instead of JSON");
        cmd->add_flag("--json", "JSON output (the default)");
    }

    CLI11_PARSE(app, argc, argv);
    ctx.text = text_mode;

    try {
        if (decide->parsed()) {
            ctx.command = "decide";
            ctx.inputs["ring"] = ring_spec;
            ctx.inputs["n"] = n;
            ctx.inputs["method"] = decide_method;
            ctx.inputs["budget"] = decide_budget;
            ctx.inputs["first_found"] = first_found;
            return run_decide(ctx, ring_spec, n, decide_method, decide_budget, first_found);
        }
        if (decompose->parsed()) {
            ctx.command = "decompose";
            ctx.inputs["ring"] = ring_spec;
            ctx.inputs["n"] = n;
            ctx.inputs["matrix"] = matrix_literal;
            ctx.inputs["method"] = decompose_method;
            ctx.inputs["budget"] = decompose_budget;
            if (decompose_method != "auto" && decompose_method != "structured" &&
                decompose_method != "brute")
                throw nilclean::RingError("unknown method '" + decompose_method +
                                          "' (auto|structured|brute)");
            return run_decompose(ctx, ring_spec, n, matrix_literal, decompose_method,
                                 decompose_budget);
        }
        if (radical->parsed()) {
            ctx.command = "radical";
            ctx.inputs["ring"] = ring_spec;
            return run_radical(ctx, ring_spec);
        }
        if (survey->parsed()) {
            ctx.command = "survey";
            ctx.inputs["max_m"] = max_m;
            ctx.inputs["n"] = n;
            ctx.inputs["budget"] = survey_budget;
            return run_survey(ctx, max_m, n, survey_budget);
        }
        if (verify->parsed()) {
            ctx.command = "verify";
            ctx.inputs["corpus"] = corpus_name;
            ctx.inputs["n_max"] = n_max;
            ctx.inputs["budget"] = verify_budget;
            ctx.inputs["lift_samples"] = lift_samples;
            return run_verify(ctx, corpus_name, n_max, verify_budget, lift_samples);
        }
        if (check_ring->parsed()) {
            ctx.command = "check-ring";
            ctx.inputs["ring"] = ring_spec;
            ctx.inputs["cap"] = axioms_cap;
            return run_check_ring(ctx, ring_spec, axioms_cap);
        }
    } catch (const nilclean::ParseError& e) {
        Json extra;
        extra["offset"] = e.offset;
        extra["expected"] = e.expected;
        return emit_error(ctx, "parse_error", e.what(), std::move(extra), 1);
    } catch (const nilclean::BudgetExceeded& e) {
        Json extra;
        extra["budget"] = e.budget;
        extra["consumed"] = e.consumed;
        return emit_error(ctx, "budget_exceeded", e.what(), std::move(extra), 2);
    } catch (const nilclean::CapExceeded& e) {
        Json extra;
        extra["cap_name"] = e.cap_name;
        extra["required"] = e.required;
        extra["cap"] = e.cap;
        return emit_error(ctx, "cap_exceeded", e.what(), std::move(extra), 2);
    } catch (const nilclean::MethodDiscrepancy& e) {
        return emit_error(ctx, "method_discrepancy", e.what(), Json::object(), 3);
    } catch (const nilclean::NonBooleanQuotient& e) {
        Json extra;
        extra["witness"] = e.witness;
        extra["quotient"] = e.quotient_spec;
        return emit_error(ctx, "non_boolean_quotient", e.what(), std::move(extra), 1);
    } catch (const nilclean::TheoremRefusal& e) {
        return emit_error(ctx, "theorem_refusal", e.what(), Json::object(), 1);
    } catch (const nilclean::RingError& e) {
        return emit_error(ctx, "ring_error", e.what(), Json::object(), 1);
    } catch (const std::exception& e) {
        return emit_error(ctx, "internal_error", e.what(), Json::object(), 1);
    }
    return 0;
}
