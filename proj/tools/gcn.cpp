// gcn: build quivers, run verification suites, trace mutation sequences, round-trip the maps

#include "gcn/verify.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace gcn;

namespace {

struct Options {
    int n = 4;
    std::uint64_t seed = 0;
    int trials = 5;
    std::string out;
    std::string format = "text";
    std::string target;
    int jobs = 0;
};

int reject_n(int n) {
    if (n == 3) {
        std::cerr << "n = 3 is a special case with its own construction and is not handled here; "
                     "see the note on n = 3 in README.md\n";
        return 2;
    }
    if (n < 3) {
        std::cerr << "n must be at least 4\n";
        return 2;
    }
    return 0;
}

// write to <out>/<file> if --out was given, stdout otherwise
void emit(const Options& o, const std::string& file, const std::string& body) {
    if (o.out.empty()) {
        std::cout << body;
        if (!body.empty() && body.back() != '\n') std::cout << '\n';
        return;
    }
    fs::create_directories(o.out);
    std::ofstream(fs::path(o.out) / file) << body << (body.empty() || body.back() == '\n' ? "" : "\n");
    std::cerr << "wrote " << (fs::path(o.out) / file).string() << '\n';
}

MatQ generic_point(Sampler& s, int n, const std::function<void(const MatQ&)>& probe) {
    for (int a = 0; a < kMaxResample; ++a) {
        MatQ x = s.matrix(n, n);
        try {
            probe(x);
            return x;
        } catch (const Singular&) {
        }
    }
    throw std::runtime_error("no generic point after " + std::to_string(kMaxResample) + " attempts");
}

Quiver relabel(const Quiver& q, const std::map<int, std::string>& names) {
    Quiver r;
    for (int i = 0; i < q.size(); ++i) {
        auto it = names.find(i);
        auto& v = q.v[i];
        r.add(it == names.end() ? v.label : it->second, v.d, v.frozen, v.isolated);
    }
    r.c = q.c;
    r.opposite = q.opposite;
    return r;
}

std::string text_summary(const std::string& name, const Quiver& q) {
    int fr = 0, iso = 0, arrows = 0;
    for (auto& v : q.v) fr += v.frozen, iso += v.isolated;
    for (int a = 0; a < q.size(); ++a)
        for (int b = 0; b < q.size(); ++b) arrows += std::max(q.c[a][b], 0);
    std::ostringstream o;
    o << name << ": " << q.size() << " vertices (" << fr << " frozen, " << iso << " isolated), " << arrows
      << " arrows";
    if (!q.opposite.empty()) o << ", " << q.opposite.size() << " opposite pair";
    o << '\n';
    return o.str();
}

// ---------------------------------------------------------------- build

int cmd_build(const Options& o) {
    int n = o.n, m = n - 1;
    struct Item {
        std::string name;
        Quiver q;
        std::vector<std::string> vars;
        nlohmann::json js;
    };
    std::vector<Item> items;
    auto from_seed = [&](const std::string& nm, const Seed& s) {
        std::vector<std::string> vars;
        for (auto& e : s.x) vars.push_back(e->name);
        items.push_back({nm, s.q, vars, to_json(s)});
    };
    from_seed("dual_Q" + std::to_string(m), dagger_seed(m));
    from_seed("toda_bar_Q" + std::to_string(m), bar_toda_seed(m));
    from_seed("Q" + std::to_string(n), main_seed(n));
    from_seed("Q" + std::to_string(n) + "_hat", main_seed(n, true));
    {
        Quiver q0 = q0_quiver(n);
        items.push_back({"Q" + std::to_string(n) + "_0", q0, {}, to_json(q0)});
    }
    {
        Sampler s{stream(o.seed, "build/boomerang")};
        MatQ x = generic_point(s, n, [n](const MatQ& x) {
            auto r = run_W(n, x, true);
            if (!r.checkpoint_ok) throw Singular("positions not separated");
        });
        auto r = run_W(n, x, true);
        std::map<int, std::string> names;
        for (auto& [p, id] : r.position_of) names[id] = p;
        Quiver qn = relabel(r.seed.q, names);
        std::vector<std::string> vars;
        for (int i = 0; i < qn.size(); ++i) {
            auto it = names.find(i);
            if (it == names.end()) {
                vars.push_back("");
                continue;
            }
            int a, b;
            std::sscanf(it->second.c_str(), "|%d,%d|", &a, &b);
            auto w = boomerang_word(n, a, b);
            vars.push_back(w ? w->str() : "");
        }
        nlohmann::json js = to_json(qn);
        for (int i = 0; i < qn.size(); ++i)
            if (!vars[i].empty()) js["vertices"][i]["variable"] = vars[i];
        js["arrow_diagnostic_ok"] = r.arrows_ok;
        js["notes"] = r.notes;
        items.push_back({"Q" + std::to_string(n) + "_n", qn, vars, js});
    }
    if (o.format == "json") {
        nlohmann::json all;
        for (auto& it : items) {
            if (!o.out.empty()) emit(o, it.name + ".json", it.js.dump(2));
            all[it.name] = it.js;
        }
        if (o.out.empty()) emit(o, "", all.dump(2));
    } else if (o.format == "dot") {
        for (auto& it : items) emit(o, it.name + ".dot", to_dot(it.q, it.name, it.vars));
    } else {
        std::string t;
        for (auto& it : items) t += text_summary(it.name, it.q);
        emit(o, "quivers.txt", t);
    }
    return 0;
}

// ---------------------------------------------------------------- verify

using SuiteFn = std::function<std::vector<Report>(int, const RunConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> s{
        {"expressions", [](int n, const RunConfig& c) { return suite_theorem_expressions(n, c); }},
        {"exchange", suite_exchange},
        {"plucker", suite_plucker_dj},
        {"compat",
         [](int n, const RunConfig& c) {
             auto r = suite_compatibility(n, c);
             append(r, suite_side_compatibility(n, c));
             return r;
         }},
        {"twomaps", suite_twomaps},
        {"rows", suite_row_brackets},
        {"homogeneity", suite_homogeneity},
        {"sequences",
         [](int n, const RunConfig& c) {
             auto r = suite_sequences(n, c);
             r.push_back(mu_check(n, c));
             return r;
         }},
        {"maps",
         [](int n, const RunConfig& c) {
             auto r = suite_maps(n, c);
             r.push_back(h_stable_check(n - 1, c));
             return r;
         }},
        {"golden", [](int, const RunConfig&) { return suite_golden(); }},
        {"properties", suite_properties},
        {"negative",
         [](int n, const RunConfig& c) {
             Report r = dexchange_check(n, c, -1, "dexchange with flipped sign");
             return std::vector<Report>{structural("corrupted dexchange is rejected", n, r.status == Status::Fail,
                                                   "check status: " + to_string(r.status))};
         }},
    };
    return s;
}

int cmd_verify(const Options& o) {
    std::vector<std::pair<std::string, SuiteFn>> chosen;
    for (auto& s : suites())
        if (o.target == "all" || o.target == s.first) chosen.push_back(s);
    if (chosen.empty()) {
        std::cerr << "unknown suite '" << o.target << "'; one of: all";
        for (auto& s : suites()) std::cerr << ' ' << s.first;
        std::cerr << '\n';
        return 2;
    }
    RunConfig cfg{o.seed, o.trials};
    std::vector<std::vector<Report>> results(chosen.size());
    std::vector<std::string> errors(chosen.size());
    std::atomic<std::size_t> next{0};
    unsigned workers = o.jobs > 0 ? unsigned(o.jobs) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, unsigned(chosen.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < chosen.size();) {
                try {
                    results[i] = chosen[i].second(o.n, cfg);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    for (auto& t : pool) t.join();

    bool ok = true;
    nlohmann::json js{{"n", o.n}, {"seed", o.seed}, {"trials", o.trials}, {"suites", nlohmann::json::array()}};
    std::ostringstream txt;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        nlohmann::json sj{{"suite", chosen[i].first}, {"checks", nlohmann::json::array()}};
        if (!errors[i].empty()) {
            ok = false;
            sj["error"] = errors[i];
            txt << "[error] " << chosen[i].first << ": " << errors[i] << '\n';
        }
        for (auto& r : results[i]) {
            ok &= r.status == Status::Pass;
            sj["checks"].push_back(to_json(r));
            txt << '[' << to_string(r.status) << "] " << chosen[i].first << " / " << r.name << " (n=" << r.n << ")";
            if (r.status != Status::Pass) txt << "  " << r.detail;
            txt << '\n';
        }
        js["suites"].push_back(sj);
    }
    js["pass"] = ok;
    if (o.format == "json") emit(o, "verify_" + o.target + "_n" + std::to_string(o.n) + ".json", js.dump(2));
    else emit(o, "verify_" + o.target + "_n" + std::to_string(o.n) + ".txt", txt.str());
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- mutate

int cmd_mutate(const Options& o) {
    int n = o.n;
    Sampler s{stream(o.seed, "mutate/" + o.target)};
    nlohmann::json js{{"plan", o.target}, {"n", n}, {"seed", o.seed}};
    bool ok = true;
    if (o.target == "W" || o.target == "H") {
        bool head = o.target == "H";
        MatQ x = generic_point(s, n, [&](const MatQ& x) {
            for (int i = 1; i <= n; ++i) nonzero(x(i, 1)), nonzero(x(1, i));
            run_W(n, x, head);
        });
        auto r = run_W(n, x, head);
        js["trace"] = nlohmann::json::array();
        for (auto& t : r.trace) js["trace"].push_back(to_json(t));
        js["steps_ok"] = r.steps_ok;
        js["checkpoint_ok"] = r.checkpoint_ok;
        js["arrow_diagnostic_ok"] = r.arrows_ok;
        if (!head) js["final_ok"] = r.final_ok;
        js["notes"] = r.notes;
        js["point"] = dump_point(x);
        ok = r.steps_ok && r.checkpoint_ok && (head || r.final_ok);
    } else if (o.target == "mu") {
        int K = 2 * n + 1;
        MuResult r;
        MatQ row;
        for (int a = 0;; ++a) {
            row = s.matrix(1, K);
            try {
                r = run_mu(n, row);
                break;
            } catch (const Singular&) {
                if (a + 1 >= kMaxResample) throw;
            }
        }
        js["values_ok"] = r.values_ok;
        js["last_exact"] = r.last_exact;
        js["last_signed"] = r.last_signed;
        js["quiver_literal"] = r.quiver_literal;
        js["quiver_swapped"] = r.quiver_swapped;
        js["notes"] = r.notes;
        js["moments"] = dump_point(row);
        js["final_seed"] = to_json(r.seed);
        ok = r.values_ok;
    } else if (o.target == "exchange4") {
        if (n != 4) {
            std::cerr << "exchange4 is the n = 4 sequence\n";
            return 2;
        }
        MatQ x = generic_point(s, 4, [](const MatQ& x) { check_exchange4(x); });
        js["lines"] = nlohmann::json::array();
        for (auto& l : check_exchange4(x)) {
            js["lines"].push_back({{"vertex", l.vertex}, {"identity", l.identity}, {"old", l.old_match},
                                   {"new", l.new_match}, {"terms", l.terms_match}});
            ok &= l.identity && l.old_match && l.new_match && l.terms_match;
        }
    } else {
        std::cerr << "unknown plan '" << o.target << "'; one of: W H mu exchange4\n";
        return 2;
    }
    js["pass"] = ok;
    if (o.format == "json") {
        emit(o, "mutate_" + o.target + "_n" + std::to_string(n) + ".json", js.dump(2));
    } else {
        std::ostringstream t;
        t << o.target << " n=" << n << ": " << (ok ? "pass" : "fail") << '\n';
        if (js.contains("trace"))
            for (auto& e : js["trace"])
                t << "  " << e["step"].get<int>() << ' ' << e["segment"].get<std::string>() << ' '
                  << e["vertex"].get<std::string>() << ' ' << e["relation"].get<std::string>() << " -> "
                  << e["predicted"].get<std::string>() << (e["match"].get<bool>() ? "" : "  MISMATCH") << '\n';
        if (js.contains("notes"))
            for (auto& nt : js["notes"]) t << "  note: " << nt.get<std::string>() << '\n';
        emit(o, "mutate_" + o.target + "_n" + std::to_string(n) + ".txt", t.str());
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- roundtrip

int cmd_roundtrip(const Options& o) {
    int n = o.n;
    Sampler s{stream(o.seed, "roundtrip")};
    int exact = 0, resamples = 0;
    nlohmann::json fails = nlohmann::json::array();
    for (int t = 0; t < o.trials; ++t) {
        for (int a = 0;; ++a) {
            MatQ x = s.matrix(n, n);
            try {
                nonzero(x(1, n)), nonzero(x(n, 1)), nonzero(det(x));
                auto r = reconstruct_X(psi_prime(x), row_of(x, 1), row_of(x, n));
                if (r.X == x) ++exact;
                else fails.push_back(dump_point(x));
                break;
            } catch (const Singular&) {
                ++resamples;
                if (a + 1 >= kMaxResample) throw;
            }
        }
    }
    nlohmann::json js{{"n", n}, {"seed", o.seed}, {"trials", o.trials}, {"exact", exact}, {"resamples", resamples}};
    if (!fails.empty()) js["failing_points"] = fails;
    if (o.format == "json") emit(o, "roundtrip_n" + std::to_string(n) + ".json", js.dump(2));
    else
        emit(o, "roundtrip_n" + std::to_string(n) + ".txt",
             "roundtrip n=" + std::to_string(n) + ": " + std::to_string(exact) + "/" + std::to_string(o.trials) +
                 " exact reconstructions\n");
    return exact == o.trials ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized cluster structure on GL_n: construction and exact verification"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c) {
        c->add_option("--n", o.n, "matrix size")->capture_default_str();
        c->add_option("--seed", o.seed, "master RNG seed")->capture_default_str();
        c->add_option("--trials", o.trials, "random points per identity")->capture_default_str()->check(CLI::PositiveNumber);
        c->add_option("--out", o.out, "output directory (stdout if empty)");
        c->add_option("--format", o.format, "json, dot or text")
            ->capture_default_str()
            ->check(CLI::IsMember({"json", "dot", "text"}));
    };
    auto build = app.add_subcommand("build", "emit the quivers and seeds for size n");
    common(build);
    auto verify = app.add_subcommand("verify", "run a check suite");
    common(verify);
    verify->add_option("suite", o.target, "suite name or 'all'")->required();
    verify->add_option("--jobs", o.jobs, "worker threads (0 = hardware)");
    auto mutate = app.add_subcommand("mutate", "run a mutation sequence with a step trace");
    common(mutate);
    mutate->add_option("plan", o.target, "W, H, mu or exchange4")->required();
    auto roundtrip = app.add_subcommand("roundtrip", "reconstruct X from Psi(X) and compare");
    common(roundtrip);

    CLI11_PARSE(app, argc, argv);
    if (int e = reject_n(o.n)) return e;
    try {
        if (*build) return cmd_build(o);
        if (*verify) return cmd_verify(o);
        if (*mutate) return cmd_mutate(o);
        if (*roundtrip) return cmd_roundtrip(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
