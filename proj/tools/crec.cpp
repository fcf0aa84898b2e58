// crec: compile C-finite sequences into div-mod / mod-mod closed forms.
//
// Exit codes: 0 success, 1 usage or input error, 2 verification mismatch,
// 3 representation validity error.

#include "crec/crec.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using crec::BigInt;

constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitInvalidRepr = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw UsageError("cannot read '" + arg.substr(1) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json parse_json_arg(const std::string& arg, const char* what) {
    try {
        return nlohmann::json::parse(read_arg(arg));
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("invalid ") + what + " JSON: " + e.what());
    }
}

struct Range {
    unsigned long lo = 1, hi = 1;
};

Range parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("range must look like a:b, got '" + s + "'");
    try {
        std::size_t used = 0;
        Range r;
        const std::string lo = s.substr(0, colon), hi = s.substr(colon + 1);
        r.lo = std::stoul(lo, &used);
        if (used != lo.size()) throw std::invalid_argument(lo);
        r.hi = std::stoul(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(hi);
        if (r.lo < 1 || r.lo > r.hi) throw UsageError("range bounds must satisfy 1 <= a <= b");
        return r;
    } catch (const std::logic_error&) {
        throw UsageError("range must look like a:b, got '" + s + "'");
    }
}

unsigned thread_limit() {
    unsigned t = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CREC_THREADS")) {
        try {
            const unsigned long v = std::stoul(env);
            if (v >= 1) t = std::min<unsigned long>(t, v);
        } catch (const std::logic_error&) {
            throw UsageError(std::string("CREC_THREADS must be a positive integer, got '") + env + "'");
        }
    }
    return t;
}

// Options shared by every command that needs a sequence or a representation.
struct SourceOptions {
    std::string recurrence;
    std::string fixture;
    std::string repr;
    std::string base;
    std::string kind;
    std::string shift_h;
    bool force = false;

    void attach(CLI::App* app, bool allow_repr) {
        app->add_option("--recurrence", recurrence, "recurrence JSON, or @file");
        app->add_option("--fixture", fixture, "published example (see `crec fixtures`)");
        if (allow_repr) app->add_option("--repr", repr, "representation JSON from `crec derive`, or @file");
        app->add_option("--base", base, "use this base (asserted, not certified)");
        app->add_option("--kind", kind, "divmod | modmod | shifted")
            ->check(CLI::IsMember({"divmod", "modmod", "shifted"}));
        app->add_option("--shift-h", shift_h, "h for the shifted form (default: growth bound)");
        app->add_flag("--force", force, "derive even if the sequence takes negative values");
    }

    std::optional<crec::Recurrence> recurrence_if_any() const {
        if (!fixture.empty()) return crec::find_fixture(fixture).rec;
        if (!recurrence.empty()) return crec::recurrence_from_json(parse_json_arg(recurrence, "recurrence"));
        return std::nullopt;
    }

    crec::Recurrence require_recurrence() const {
        auto r = recurrence_if_any();
        if (!r) throw UsageError("one of --fixture or --recurrence is required");
        return *r;
    }

    std::optional<BigInt> base_override() const {
        if (base.empty()) return std::nullopt;
        try {
            return crec::parse_bigint(base);
        } catch (const std::invalid_argument&) {
            throw UsageError("--base must be an integer, got '" + base + "'");
        }
    }

    crec::Repr derive() const {
        const int sources = !fixture.empty() + !recurrence.empty() + !repr.empty();
        if (sources != 1) throw UsageError("give exactly one of --fixture, --recurrence, --repr");
        if (!repr.empty()) return crec::repr_from_json(parse_json_arg(repr, "representation"));

        if (!fixture.empty() && kind.empty() && shift_h.empty())
            return crec::derive_fixture(crec::find_fixture(fixture), base_override());

        const crec::Recurrence rec = require_recurrence();
        crec::DeriveOptions opts;
        opts.base = base_override();
        opts.force = force;
        if (!shift_h.empty()) opts.shift_h = crec::parse_bigint(shift_h);
        else if (!fixture.empty()) opts.shift_h = crec::find_fixture(fixture).shift_h;
        if (!fixture.empty() && !opts.base) opts.base = crec::find_fixture(fixture).base;

        std::string k = kind;
        if (k.empty()) k = !fixture.empty() ? crec::to_string(crec::find_fixture(fixture).kind) : "modmod";
        switch (crec::parse_kind(k)) {
            case crec::ReprKind::divmod: return crec::derive_divmod(rec, opts);
            case crec::ReprKind::modmod: return crec::derive_modmod(rec, opts);
            case crec::ReprKind::shifted: return crec::derive_shifted(rec, opts);
        }
        throw std::logic_error("unreachable");
    }
};

const crec::CertifiedBase* base_of(const crec::Repr& r) {
    if (auto* d = std::get_if<crec::DivModRepr>(&r)) return &d->base;
    if (auto* m = std::get_if<crec::ModModRepr>(&r)) return &m->base;
    if (auto* s = std::get_if<crec::ShiftedRepr>(&r)) return &s->inner.base;
    return nullptr;
}

void provenance_note(const crec::Repr& r) {
    const auto* b = base_of(r);
    if (!b) return;
    if (b->mode == crec::BaseMode::asserted)
        std::cerr << "note: base " << crec::to_string(b->base) << " is asserted (not certified); check it with `crec verify`\n";
    else
        std::cerr << "note: base " << crec::to_string(b->base) << " is certified for all n >= 1 (g = "
                  << crec::to_string(b->growth) << ", cutoff = " << b->cutoff << ")\n";
}

crec::RenderFormat parse_format(const std::string& f) {
    if (f == "text") return crec::RenderFormat::text;
    if (f == "latex") return crec::RenderFormat::latex;
    if (f == "json") return crec::RenderFormat::json;
    throw UsageError("format must be text, latex or json for this command");
}

void print_report(const crec::VerifyReport& rep, const std::string& label, bool json) {
    if (json) {
        nlohmann::json j;
        j["label"] = label;
        j["range"] = {rep.n_lo, rep.n_hi};
        j["status"] = rep.ok() ? "ok" : "mismatch";
        j["checked"] = rep.checked;
        j["modulus_divides"] = rep.modulus_divides;
        if (rep.first_mismatch) {
            const auto& m = *rep.first_mismatch;
            j["first_mismatch"] = {{"n", m.n},
                                   {"expected", crec::to_string(m.expected)},
                                   {"got", m.got ? nlohmann::json(crec::to_string(*m.got)) : nlohmann::json(nullptr)},
                                   {"error", m.error},
                                   {"dump", m.dump}};
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << label << ": n = " << rep.n_lo << ".." << rep.n_hi << " " << (rep.ok() ? "ok" : "MISMATCH");
    if (rep.first_mismatch) {
        const auto& m = *rep.first_mismatch;
        std::cout << " at n = " << m.n << ": expected " << crec::to_string(m.expected) << ", got "
                  << (m.got ? crec::to_string(*m.got) : "error (" + m.error + ")") << "\n"
                  << m.dump;
    } else {
        std::cout << "\n";
    }
    if (!rep.modulus_divides.empty()) {
        std::cout << "  note: B~(e^n) divides the numerator at n =";
        for (auto n : rep.modulus_divides) std::cout << " " << n;
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compile C-finite sequences into exact div-mod / mod-mod closed forms"};
    app.require_subcommand(1);

    // derive
    SourceOptions derive_src;
    std::string derive_format = "json";
    auto* derive = app.add_subcommand("derive", "compile a recurrence into a representation");
    derive_src.attach(derive, false);
    derive->add_option("--format", derive_format, "json | text | latex");

    // render
    SourceOptions render_src;
    std::string render_format = "text";
    auto* render = app.add_subcommand("render", "print a representation as a formula");
    render_src.attach(render, true);
    render->add_option("--format", render_format, "text | latex | json");

    // eval
    SourceOptions eval_src;
    unsigned long eval_n = 0;
    std::string eval_range, eval_strategy = "fast";
    auto* eval = app.add_subcommand("eval", "evaluate a representation");
    eval_src.attach(eval, true);
    eval->add_option("-n", eval_n, "index n >= 1");
    eval->add_option("--range", eval_range, "a:b, prints 'n value' lines");
    eval->add_option("--strategy", eval_strategy, "naive | fast")->check(CLI::IsMember({"naive", "fast"}));

    // verify
    SourceOptions verify_src;
    std::string verify_range = "1:25", verify_strategy = "fast", verify_format = "text", verify_bfile;
    bool verify_exhaustive = false;
    unsigned verify_random = 0;
    std::uint64_t verify_seed = 1;
    auto* verify = app.add_subcommand("verify", "compare a representation with the recurrence");
    verify_src.attach(verify, true);
    verify->add_option("--range", verify_range, "a:b (default 1:25)");
    verify->add_option("--strategy", verify_strategy, "naive | fast | both")
        ->check(CLI::IsMember({"naive", "fast", "both"}));
    verify->add_flag("--exhaustive", verify_exhaustive, "do not stop at the first mismatch");
    verify->add_option("--format", verify_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--bfile", verify_bfile, "cross-check the recurrence against an OEIS b-file");
    verify->add_option("--random", verify_random, "run the certified pipeline on this many random recurrences");
    verify->add_option("--seed", verify_seed, "seed for --random");

    // bench
    std::string bench_fixture, bench_range, bench_format = "csv", bench_out;
    std::vector<unsigned long> bench_ns;
    std::vector<std::string> bench_strategies{"divmod", "modmod-naive", "modmod-fast"};
    unsigned bench_reps = 5;
    auto* bench = app.add_subcommand("bench", "time full-width division against modular exponentiation");
    bench->add_option("--fixture", bench_fixture, "published example")->required();
    bench->add_option("-n", bench_ns, "indices to benchmark (repeatable)");
    bench->add_option("--range", bench_range, "a:b");
    bench->add_option("--strategy", bench_strategies, "divmod | modmod-naive | modmod-fast (repeatable)");
    bench->add_option("--reps", bench_reps, "timed repetitions per point (median reported)");
    bench->add_option("--format", bench_format, "csv | gnuplot")->check(CLI::IsMember({"csv", "gnuplot"}));
    bench->add_option("--out", bench_out, "write to this file instead of stdout");

    // fixtures
    std::string fixtures_format = "json";
    auto* fixtures = app.add_subcommand("fixtures", "list the published examples");
    fixtures->add_option("--format", fixtures_format, "json | text")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*derive) {
            const auto repr = derive_src.derive();
            provenance_note(repr);
            std::cout << crec::render(repr, parse_format(derive_format)) << "\n";
            return 0;
        }
        if (*render) {
            std::cout << crec::render(render_src.derive(), parse_format(render_format)) << "\n";
            return 0;
        }
        if (*eval) {
            const auto repr = eval_src.derive();
            const auto strategy = crec::parse_strategy(eval_strategy);
            if (!eval_range.empty()) {
                if (eval_n != 0) throw UsageError("give either -n or --range");
                const auto r = parse_range(eval_range);
                for (unsigned long n = r.lo; n <= r.hi; ++n)
                    std::cout << n << " " << crec::to_string(crec::evaluate(repr, n, strategy)) << "\n";
                return 0;
            }
            if (eval_n < 1) throw UsageError("-n must be at least 1");
            std::cout << crec::to_string(crec::evaluate(repr, eval_n, strategy)) << "\n";
            return 0;
        }
        if (*verify) {
            const auto range = parse_range(verify_range);
            const bool json = verify_format == "json";
            std::vector<crec::EvalStrategy> strategies;
            if (verify_strategy == "both")
                strategies = {crec::EvalStrategy::naive, crec::EvalStrategy::fast};
            else
                strategies = {crec::parse_strategy(verify_strategy)};
            crec::VerifyOptions vopts;
            vopts.exhaustive = verify_exhaustive;
            vopts.threads = thread_limit();

            bool all_ok = true;
            if (verify_random > 0) {
                for (unsigned i = 0; i < verify_random; ++i) {
                    const auto rec = crec::random_natural_recurrence(verify_seed + i, 4, 5, 9);
                    const std::string label = "random " + nlohmann::json(rec).dump();
                    for (const auto& repr : {crec::derive_divmod(rec), crec::derive_modmod(rec)})
                        for (auto s : strategies) {
                            vopts.strategy = s;
                            const auto rep = crec::verify_range(repr, rec, range.lo, range.hi, vopts);
                            all_ok = all_ok && rep.ok();
                            if (!rep.ok()) print_report(rep, label, json);
                        }
                }
                std::cout << verify_random << " random recurrences: " << (all_ok ? "ok" : "MISMATCH") << "\n";
                return all_ok ? 0 : kExitMismatch;
            }

            const auto rec = verify_src.require_recurrence();
            if (!verify_bfile.empty()) {
                const auto bad = crec::crosscheck_bfile(rec, crec::load_bfile(verify_bfile));
                if (bad) {
                    std::cout << "b-file disagrees with recurrence at n = " << bad->n << ": b-file "
                              << crec::to_string(bad->value) << "\n";
                    return kExitMismatch;
                }
                if (!json) std::cout << "b-file " << verify_bfile << ": consistent with recurrence\n";
            }
            const auto repr = verify_src.derive();
            const std::string label = verify_src.fixture.empty() ? "recurrence" : verify_src.fixture;
            for (auto s : strategies) {
                vopts.strategy = s;
                const auto rep = crec::verify_range(repr, rec, range.lo, range.hi, vopts);
                print_report(rep, label + " [" + crec::kind_name(repr) + ", " + crec::to_string(s) + "]", json);
                all_ok = all_ok && rep.ok();
            }
            return all_ok ? 0 : kExitMismatch;
        }
        if (*bench) {
            std::vector<unsigned long> ns = bench_ns;
            if (!bench_range.empty()) {
                const auto r = parse_range(bench_range);
                for (unsigned long n = r.lo; n <= r.hi; ++n) ns.push_back(n);
            }
            if (ns.empty()) ns = {8, 16, 32, 64, 128};
            for (auto n : ns)
                if (n < 1) throw UsageError("-n must be at least 1");
            std::vector<crec::BenchStrategy> strategies;
            for (const auto& s : bench_strategies) strategies.push_back(crec::parse_bench_strategy(s));
            const auto rows = crec::bench_eval(crec::find_fixture(bench_fixture), ns, strategies, bench_reps);
            std::ofstream file;
            if (!bench_out.empty()) {
                file.open(bench_out);
                if (!file) throw std::runtime_error("cannot open '" + bench_out + "' for writing");
            }
            std::ostream& out = bench_out.empty() ? std::cout : file;
            if (bench_format == "gnuplot")
                crec::emit_gnuplot(rows, out);
            else
                crec::emit_csv(rows, out);
            return 0;
        }
        if (*fixtures) {
            if (fixtures_format == "text") {
                for (const auto& f : crec::fixtures())
                    std::cout << f.name << "  " << f.oeis << "  " << crec::to_string(f.kind) << "  base "
                              << crec::to_string(f.base) << "  " << f.title << "\n";
                return 0;
            }
            auto arr = nlohmann::json::array();
            for (const auto& f : crec::fixtures()) arr.push_back(crec::fixture_json(f));
            std::cout << arr.dump(2) << "\n";
            return 0;
        }
    } catch (const crec::RepresentationError& e) {
        std::cerr << "error: invalid representation: " << e.what() << "\n";
        return kExitInvalidRepr;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
