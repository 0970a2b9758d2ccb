// Batch experiment front-end: construct / learn-dl / learn-parity / profile.
// Every subcommand is a pure function of (config, root seed); report files
// are byte-identical across reruns with the same inputs.

#include <CLI11.hpp>

#include "ptflab/serialize.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

using namespace ptflab;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// --config file values fill in options the command line left untouched
void apply_config(CLI::App* cmd, const std::string& path) {
    auto cfg = json::parse(read_file(path));
    for (auto& [key, value] : cfg.items()) {
        auto* opt = cmd->get_option_no_throw("--" + key);
        if (!opt || opt->count() > 0) continue;
        if (value.is_array()) {
            for (const auto& el : value)
                opt->add_result(el.is_string() ? el.get<std::string>() : el.dump());
        } else {
            opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
        }
        opt->run_callback();
    }
}

DecisionList load_concept(const std::string& kind, const std::string& file,
                          std::uint32_t k, std::uint32_t n, std::uint64_t seed) {
    if (!file.empty()) return decision_list_from_json(json::parse(read_file(file)));
    if (kind == "oddmaxbit") {
        DecisionList L = oddmaxbit(k);
        if (n > k) L.n = n;
        return L;
    }
    if (kind == "random") return random_decision_list(k, n ? n : k, split_seed(seed, 0));
    throw CLI::ValidationError("--kind", "expected oddmaxbit or random");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

int cmd_construct(const std::string& kind, const std::string& file, std::uint32_t k,
                  std::uint32_t n, unsigned h, const std::string& construction,
                  std::uint64_t seed, bool corrupt, const std::string& out_poly,
                  const std::string& out_report) {
    DecisionList L = load_concept(kind, file, k, n, seed);
    Ptf p;
    if (construction == "outer")
        p = outer_ptf(L, h ? h : main_ptf_block_len(L.length()));
    else if (construction == "compose")
        p = compose_ptf(L, h ? h : std::min<std::size_t>(main_ptf_block_len(L.length()),
                                                         L.length()));
    else if (construction == "main")
        p = main_ptf(L);
    else
        throw CLI::ValidationError("--construction", "expected outer, compose, or main");

    if (corrupt && !p.poly.terms.empty()) {
        p.poly.terms.begin()->second = -p.poly.terms.begin()->second * 3 - 1;
        measure(p);
    }

    json report;
    report["concept"] = to_json(L);
    report["ptf"] = to_json(p.info);
    bool ok = true;
    if (L.n <= exhaustion_limit()) {
        auto rep = verify_ptf_exhaustive(
            p, [&](std::uint64_t m) { return L.eval(mask_to_bits(m, L.n)); }, L.n);
        report["verify"] = to_json(rep);
        ok = rep.valid();
        if (!ok && rep.first_witness)
            std::fprintf(stderr, "verification failed: witness x = %s\n",
                         bits_to_string(mask_to_bits(*rep.first_witness, L.n)).c_str());
    } else {
        report["verify"] = nullptr; // domain over the exhaustion limit
    }

    if (!out_poly.empty()) write_file(out_poly, to_text(p.poly));
    std::string text = report.dump(2) + "\n";
    if (!out_report.empty())
        write_file(out_report, text);
    else
        std::cout << text;
    return ok ? 0 : 1;
}

// --- comparison table helpers (desk-scale empirical analogue) ---

// Greedy consistent-list learner from the full truth table.
DecisionList baseline_list_learner(const DecisionList& target) {
    const std::uint32_t n = target.n;
    const std::uint64_t size = std::uint64_t(1) << n;
    std::vector<std::uint8_t> covered(size, 0);
    std::vector<int> label(size);
    for (std::uint64_t m = 0; m < size; ++m)
        label[m] = target.eval(mask_to_bits(m, n));

    DecisionList out;
    out.n = n;
    out.default_label = target.default_label;
    while (true) {
        int first = 0;
        for (std::uint64_t m = 0; m < size; ++m)
            if (!covered[m]) { first = label[m]; break; }
        if (first == 0) break; // everything covered
        bool uniform = true;
        for (std::uint64_t m = 0; m < size; ++m)
            if (!covered[m] && label[m] != first) { uniform = false; break; }
        if (uniform) {
            out.default_label = first;
            break;
        }
        bool appended = false;
        for (std::uint32_t v = 0; v < n && !appended; ++v) {
            for (int neg = 0; neg < 2 && !appended; ++neg) {
                Literal lit{v, neg != 0};
                int want = 0;
                bool feasible = true, nonempty = false;
                for (std::uint64_t m = 0; m < size && feasible; ++m) {
                    if (covered[m]) continue;
                    if (!lit.fires(mask_to_bits(m, n))) continue;
                    nonempty = true;
                    if (want == 0) want = label[m];
                    else if (want != label[m]) feasible = false;
                }
                if (!feasible || !nonempty) continue;
                out.items.push_back({lit, want});
                for (std::uint64_t m = 0; m < size; ++m)
                    if (!covered[m] && lit.fires(mask_to_bits(m, n))) covered[m] = 1;
                appended = true;
            }
        }
        if (!appended) throw std::runtime_error("baseline learner stuck (not a decision list?)");
    }
    return out;
}

// Majority-vote over all decision lists of length <= k, adversarial teacher.
// Class size is n^{O(k)}, so this cell is only populated at tiny scale.
std::uint64_t halving_mistakes(const DecisionList& target, std::uint32_t k) {
    const std::uint32_t n = target.n;
    const std::uint64_t size = std::uint64_t(1) << n;
    std::vector<int> truth(size);
    for (std::uint64_t m = 0; m < size; ++m)
        truth[m] = target.eval(mask_to_bits(m, n));

    // enumerate hypotheses as truth-table bitmaps (bit set = predicts +1)
    std::vector<std::vector<std::uint64_t>> alive;
    const std::size_t words = std::size_t((size + 63) / 64);
    std::vector<std::pair<Literal, int>> items;
    std::function<void(std::uint64_t)> emit = [&](std::uint64_t usedmask) {
        for (int def : {-1, +1}) {
            DecisionList L;
            L.n = n;
            L.items = items;
            L.default_label = def;
            std::vector<std::uint64_t> tt(words, 0);
            for (std::uint64_t m = 0; m < size; ++m)
                if (L.eval(mask_to_bits(m, n)) > 0) tt[m / 64] |= std::uint64_t(1) << (m % 64);
            alive.push_back(std::move(tt));
        }
        if (items.size() == k) return;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (usedmask & (std::uint64_t(1) << v)) continue;
            for (int neg = 0; neg < 2; ++neg)
                for (int b : {-1, +1}) {
                    items.push_back({Literal{v, neg != 0}, b});
                    emit(usedmask | (std::uint64_t(1) << v));
                    items.pop_back();
                }
        }
    };
    emit(0);

    std::uint64_t mistakes = 0;
    while (true) {
        std::optional<std::uint64_t> bad;
        for (std::uint64_t m = 0; m < size; ++m) {
            std::size_t pos = 0;
            for (const auto& tt : alive)
                if (tt[m / 64] & (std::uint64_t(1) << (m % 64))) ++pos;
            int pred = 2 * pos >= alive.size() ? +1 : -1;
            if (pred != truth[m]) { bad = m; break; }
        }
        if (!bad) break;
        ++mistakes;
        std::uint64_t m = *bad;
        std::vector<std::vector<std::uint64_t>> next;
        for (auto& tt : alive) {
            bool pos = tt[m / 64] & (std::uint64_t(1) << (m % 64));
            if ((truth[m] > 0) == pos) next.push_back(std::move(tt));
        }
        alive = std::move(next);
        if (alive.empty()) throw std::runtime_error("halving eliminated every hypothesis");
    }
    return mistakes;
}

int cmd_learn_dl(const std::string& kind, const std::string& file, std::uint32_t k,
                 std::uint32_t n, const std::string& teacher, std::uint64_t trials,
                 unsigned d_override, std::uint64_t seed, bool table,
                 const std::string& out_report) {
    DecisionList L = load_concept(kind, file, k, n, seed);
    auto concept_fn = [&](std::uint64_t m) { return L.eval(mask_to_bits(m, L.n)); };
    WinnowConfig cfg = expanded_winnow_for_list(L.length(), L.n);
    if (d_override) cfg.d = d_override;
    Teacher t = teacher == "adversarial" ? Teacher::adversarial_exhaustive
                                         : Teacher::iid_uniform;
    if (teacher != "adversarial" && teacher != "iid")
        throw CLI::ValidationError("--teacher", "expected adversarial or iid");

    auto rec = run_online(concept_fn, L.n, cfg, t, trials, split_seed(seed, 1));
    json report;
    report["concept"] = to_json(L);
    report["teacher"] = teacher;
    report["record"] = to_json(rec);

    if (table) {
        // wall times go to stdout only, so the report file stays reproducible
        json rows = json::array();
        auto t0 = std::chrono::steady_clock::now();
        auto base = baseline_list_learner(L);
        double base_ms = elapsed_ms(t0);
        rows.push_back({{"algorithm", "exhaustive-list-baseline"},
                        {"examples", std::uint64_t(1) << L.n},
                        {"learned_length", base.length()}});
        std::fprintf(stdout, "table: exhaustive-list-baseline %.2f ms\n", base_ms);

        if (L.length() <= 3 && L.n <= 8) {
            t0 = std::chrono::steady_clock::now();
            auto hm = halving_mistakes(L, std::uint32_t(L.length()));
            rows.push_back({{"algorithm", "halving"}, {"mistakes", hm}});
            std::fprintf(stdout, "table: halving %.2f ms\n", elapsed_ms(t0));
        } else {
            rows.push_back({{"algorithm", "halving"}, {"mistakes", "infeasible"}});
        }

        t0 = std::chrono::steady_clock::now();
        WinnowConfig plain;
        plain.d = 1;
        auto prec = run_online(concept_fn, L.n, plain, t, trials, split_seed(seed, 2));
        rows.push_back({{"algorithm", "winnow-d1"},
                        {"mistakes", prec.mistakes},
                        {"final_consistent", prec.final_consistent}});
        std::fprintf(stdout, "table: winnow-d1 %.2f ms\n", elapsed_ms(t0));

        rows.push_back({{"algorithm", "expanded-winnow"},
                        {"mistakes", rec.mistakes},
                        {"final_consistent", rec.final_consistent}});
        report["comparison"] = rows;
    }

    std::string text = report.dump(2) + "\n";
    if (!out_report.empty())
        write_file(out_report, text);
    else
        std::cout << text;
    return (t == Teacher::adversarial_exhaustive && !rec.final_consistent) ? 1 : 0;
}

int cmd_learn_parity(std::uint32_t n, std::uint32_t k, double eps, double delta,
                     std::uint64_t max_trials, std::uint64_t seed,
                     const std::string& sample_file, const std::string& out_report) {
    ParityFunction target = random_parity(k, n, split_seed(seed, 0));
    ExampleOracle oracle;
    if (!sample_file.empty()) {
        auto S = std::make_shared<LabeledSample>(sample_from_text(read_file(sample_file)));
        if (S->n != n) throw std::runtime_error("sample dimension mismatch");
        auto idx = std::make_shared<std::size_t>(0);
        oracle = [S, idx]() {
            if (*idx >= S->examples.size())
                throw std::runtime_error("sample file exhausted");
            return S->examples[(*idx)++];
        };
    } else {
        oracle = make_parity_oracle(target, split_seed(seed, 1));
    }

    auto hyp = learn_parity(oracle, n, k, eps, delta, split_seed(seed, 2), max_trials);

    std::uint32_t l = restriction_size(n, k);
    json report;
    report["n"] = n;
    report["k"] = k;
    report["l"] = l;
    report["m"] = occam_sample_size(n, k, eps, delta);
    report["trials_used"] = hyp.trials_used;
    Rat p = trial_success_probability(n, k, l);
    report["success_prob_exact"] = p.get_str();
    report["success_freq"] = 1.0 / double(hyp.trials_used);
    json support = json::array();
    for (auto v : hyp.support) support.push_back(v + 1);
    report["hypothesis_support"] = support;

    if (sample_file.empty()) {
        auto holdout = make_parity_oracle(target, split_seed(seed, 3));
        int errs = 0;
        const int probes = 2000;
        for (int i = 0; i < probes; ++i) {
            auto [x, label] = holdout();
            if (hyp.eval(x) != label) ++errs;
        }
        report["holdout_error"] = double(errs) / probes;
    } else {
        report["holdout_error"] = nullptr; // no oracle to draw fresh examples from
    }

    std::string text = report.dump(2) + "\n";
    if (!out_report.empty())
        write_file(out_report, text);
    else
        std::cout << text;
    return 0;
}

int cmd_profile(const std::string& family, const std::vector<std::size_t>& ks,
                const std::vector<unsigned>& hs, std::uint64_t seed,
                const std::string& out_csv, const std::string& out_json) {
    ConceptFamily fam;
    if (family == "oddmaxbit")
        fam = ConceptFamily::oddmaxbit;
    else if (family == "random")
        fam = ConceptFamily::random;
    else
        throw CLI::ValidationError("--family", "expected oddmaxbit or random");

    auto rows = tradeoff_profile(fam, ks, hs, seed);
    std::string csv = tradeoff_csv(rows);
    if (!out_csv.empty())
        write_file(out_csv, csv);
    else
        std::cout << csv;
    if (!out_json.empty()) write_file(out_json, to_json(rows).dump(2) + "\n");

    for (const auto& r : rows)
        if (!r.verified) {
            std::fprintf(stderr, "profile row k=%zu h=%u failed verification\n", r.k, r.h);
            return 1;
        }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial threshold function laboratory"};
    app.require_subcommand(1);
    // keep -h free for the block-length flag
    app.set_help_flag("--help", "print help");

    std::string config_path, kind = "random", concept_file, construction = "compose";
    std::string teacher = "adversarial", out_poly, out_report, out_csv, out_json;
    std::string sample_file, family = "oddmaxbit";
    std::uint32_t k = 4, n = 0;
    unsigned h = 0, d_override = 0;
    std::uint64_t seed = 0, trials = 1000000;
    double eps = 0.1, delta = 0.1;
    bool corrupt = false, table = false;
    std::vector<std::size_t> ks{8, 10, 12};
    std::vector<unsigned> hs{2, 3, 4};

    auto* con = app.add_subcommand("construct", "build and verify a threshold polynomial");
    con->set_help_flag("--help", "print help");
    con->add_option("--config", config_path, "JSON config file");
    con->add_option("--kind", kind, "oddmaxbit | random");
    con->add_option("--concept-file", concept_file, "decision list JSON");
    con->add_option("--k", k, "list length");
    con->add_option("--n", n, "ambient dimension (default k)");
    con->add_option("--h", h, "block length (default: balanced choice)");
    con->add_option("--construction", construction, "outer | compose | main");
    con->add_option("--seed", seed, "root seed");
    con->add_flag("--corrupt", corrupt, "test hook: corrupt one coefficient");
    con->add_option("--out-poly", out_poly, "polynomial text output path");
    con->add_option("--out-report", out_report, "JSON report path (default stdout)");

    auto* ldl = app.add_subcommand("learn-dl", "online learning of a decision list");
    ldl->add_option("--config", config_path, "JSON config file");
    ldl->add_option("--kind", kind, "oddmaxbit | random");
    ldl->add_option("--concept-file", concept_file, "decision list JSON");
    ldl->add_option("--k", k, "list length");
    ldl->add_option("--n", n, "ambient dimension (default k)");
    ldl->add_option("--teacher", teacher, "adversarial | iid");
    ldl->add_option("--trials", trials, "trial budget");
    ldl->add_option("--d", d_override, "feature degree override");
    ldl->add_option("--seed", seed, "root seed");
    ldl->add_flag("--table", table, "emit the algorithm comparison table");
    ldl->add_option("--out-report", out_report, "JSON report path (default stdout)");

    std::uint32_t pn = 128, pk = 3;
    std::uint64_t ptrials = 0;
    auto* lpar = app.add_subcommand("learn-parity", "sublinear-sample parity learning");
    lpar->add_option("--config", config_path, "JSON config file");
    lpar->add_option("--n", pn, "dimension");
    lpar->add_option("--k", pk, "parity size");
    lpar->add_option("--eps", eps, "accuracy");
    lpar->add_option("--delta", delta, "confidence");
    lpar->add_option("--trials", ptrials, "max restriction trials (0 = 100n)");
    lpar->add_option("--seed", seed, "root seed");
    lpar->add_option("--sample-file", sample_file, "read examples from file");
    lpar->add_option("--out-report", out_report, "JSON report path (default stdout)");

    auto* prof = app.add_subcommand("profile", "degree/weight tradeoff profile");
    prof->add_option("--config", config_path, "JSON config file");
    prof->add_option("--family", family, "oddmaxbit | random");
    prof->add_option("--ks", ks, "list lengths")->delimiter(',');
    prof->add_option("--hs", hs, "block lengths")->delimiter(',');
    prof->add_option("--seed", seed, "root seed");
    prof->add_option("--out-csv", out_csv, "CSV output path (default stdout)");
    prof->add_option("--out-json", out_json, "JSON output path");

    CLI11_PARSE(app, argc, argv);
    try {
        auto* active = app.get_subcommands().front();
        if (!config_path.empty()) apply_config(active, config_path);
        if (n == 0) n = k;
        if (active == con)
            return cmd_construct(kind, concept_file, k, n, h, construction, seed, corrupt,
                                 out_poly, out_report);
        if (active == ldl)
            return cmd_learn_dl(kind, concept_file, k, n, teacher, trials, d_override,
                                seed, table, out_report);
        if (active == lpar)
            return cmd_learn_parity(pn, pk, eps, delta, ptrials, seed, sample_file,
                                    out_report);
        if (active == prof)
            return cmd_profile(family, ks, hs, seed, out_csv, out_json);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
