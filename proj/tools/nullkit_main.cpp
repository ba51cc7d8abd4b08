// nullkit command line: radical membership, HN, transcendence degree,
// certificates and the generator/3-generator reductions over small prime
// fields, with explicit seeds so every run is reproducible.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nullkit/algorithms.hpp"
#include "nullkit/io.hpp"

using nlohmann::ordered_json;
using namespace nullkit;

namespace {

struct Options {
    std::string input;
    std::uint64_t seed = 0;
    int trials = 11;
    int r = -1;
    std::string format = "json";
    std::uint64_t gb_budget = 200000;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NULLKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw Error("NULLKIT_SEED is not a valid integer");
        }
    }
    return 0;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("input", o.input, "problem file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "random seed (default: NULLKIT_SEED or 0)");
    cmd->add_option("--trials", o.trials, "amplification trials")->check(CLI::PositiveNumber);
    cmd->add_option("--r", o.r, "transcendence degree bound (default: computed)");
    cmd->add_option("--format", o.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--gb-budget", o.gb_budget, "Groebner step budget");
}

ordered_json field_json(const FieldCtxPtr& ctx) {
    return ordered_json{{"p", ctx->p()}, {"k", ctx->k()}};
}

void emit(const ordered_json& j, const Options& o) {
    if (o.format == "json") {
        std::cout << j.dump() << "\n";
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (value.is_string())
            std::cout << key << ": " << value.get<std::string>() << "\n";
        else
            std::cout << key << ": " << value.dump() << "\n";
    }
}

int decide_r(const Options& o, const BlackboxSystem& sys, const AlgoConfig& cfg) {
    if (o.r >= 0) return o.r;
    if (sys.trdeg_bound) return *sys.trdeg_bound;
    return trdeg_compute(sys, Rng(o.seed).fork(0x7d).state(), o.trials, cfg).trdeg;
}

int run_command(const std::string& command, const Options& o) {
    AlgoConfig cfg;
    cfg.gb.budget = o.gb_budget;
    auto t0 = std::chrono::steady_clock::now();
    ParsedInput in = parse_input_file(o.input);

    ordered_json j;
    j["command"] = command;

    if (command == "hn") {
        auto v = hn_test(in.boxes(), o.r, o.seed, o.trials, cfg);
        j["answer"] = v.answer == HnAnswer::empty ? "empty" : "nonempty";
        j["r"] = v.r_used;
        j["seed"] = v.seed;
        j["trials"] = v.trials;
        j["field"] = field_json(v.field_used);
        j["confidence_note"] = v.confidence_note;
    } else if (command == "radical") {
        if (!in.query) throw Error("radical membership needs a g stanza");
        auto v = radical_membership(Blackbox::from_poly(*in.query), in.boxes(), o.r, o.seed,
                                    o.trials, cfg);
        j["answer"] = v.answer == MembershipAnswer::member ? "member" : "not_member";
        j["r"] = v.r_used;
        j["seed"] = v.seed;
        j["trials"] = v.trials;
        j["field"] = field_json(v.field_used);
        j["confidence_note"] = v.confidence_note;
    } else if (command == "trdeg") {
        auto v = trdeg_compute(in.boxes(), o.seed, o.trials, cfg);
        j["answer"] = v.trdeg;
        j["seed"] = v.seed;
        j["trials"] = v.trials;
        j["field"] = field_json(v.field_used);
        j["confidence_note"] = v.confidence_note;
    } else if (command == "cert") {
        PolySystem sys = in.system();
        int r = decide_r(o, in.boxes(), cfg);
        auto size = required_sample_size(SamplePurpose::generator_reduction, sys.n,
                                         static_cast<int>(sys.size()), r, sys.degs());
        SampleSet S = make_sample_set(sys.ctx, std::max<std::uint64_t>(size, 2), true, o.seed);
        Rng rng(o.seed);
        j["r"] = r;
        j["seed"] = o.seed;
        j["field"] = field_json(S.ctx);
        try {
            Certificate cert = nss_certificate(sys, r, S, rng, cfg);
            j["answer"] = "certificate";
            j["bound"] = cert.bound;
            ordered_json hs = ordered_json::array();
            for (const auto& h : cert.h) hs.push_back(h.str());
            j["h"] = hs;
            j["verified"] = verify_certificate(sys, cert);
        } catch (const NoCertificate& e) {
            j["answer"] = "no_certificate";
            j["detail"] = e.what();
        }
    } else if (command == "reduce") {
        PolySystem sys = in.system();
        int r = decide_r(o, in.boxes(), cfg);
        auto size = required_sample_size(SamplePurpose::generator_reduction, sys.n,
                                         static_cast<int>(sys.size()), r, sys.degs());
        SampleSet S = make_sample_set(sys.ctx, std::max<std::uint64_t>(size, 2), true, o.seed);
        PolySystem lifted = S.ctx->same_field(*sys.ctx) ? sys : sys.lifted(S.ctx);
        Rng rng(o.seed);
        auto red = generator_reduction(lifted, r, S, rng);
        j["answer"] = "reduced";
        j["r"] = r;
        j["seed"] = o.seed;
        j["field"] = field_json(S.ctx);
        ordered_json gs = ordered_json::array();
        for (const auto& g : red.polys) gs.push_back(g.str());
        j["g"] = gs;
        ordered_json mix = ordered_json::array();
        for (std::size_t i = 0; i < red.mix.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < red.mix.cols(); ++c) row.push_back(red.mix.c.at(i, c).str());
            mix.push_back(row);
        }
        j["matrix"] = mix;
        j["order"] = red.order;
    } else if (command == "zerodim") {
        PolySystem sys = in.system();
        GroebnerDimensionOracle oracle(cfg.gb);
        int dim = oracle.dimension(sys);
        j["answer"] = dim;
        j["empty"] = dim == -1;
        j["zero_dimensional"] = dim == 0;
        j["field"] = field_json(sys.ctx);
    } else if (command == "threegen") {
        if (!in.query) throw Error("the 3-generator transform needs a g stanza");
        PolySystem sys = in.system();
        auto [gp, t] = three_generator_transform(*in.query, sys);
        j["answer"] = "transformed";
        j["g_prime"] = gp.str();
        ordered_json gens = ordered_json::array();
        for (const auto& f : t.polys) gens.push_back(f.str());
        j["generators"] = gens;
        j["field"] = field_json(sys.ctx);
        j["n"] = t.n;
    }

    auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    j["wall_ms"] = wall.count();
    emit(j, o);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nullkit: randomized radical membership, Nullstellensatz certificates and "
                 "transcendence degree for polynomial systems of low transcendence degree"};
    app.require_subcommand(1);

    Options o;
    try {
        o.seed = default_seed();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const char* names[] = {"hn", "radical", "trdeg", "cert", "reduce", "zerodim", "threegen"};
    const char* descs[] = {
        "decide whether the system has any common root",
        "decide g in rad(<f_1..f_m>)",
        "compute the transcendence degree",
        "construct a bounded-degree Nullstellensatz certificate",
        "reduce to r+1 random combinations with the same zeroset",
        "exact dimension of the zeroset (Groebner)",
        "rewrite ideal membership over 3 generators"};
    for (int i = 0; i < 7; ++i) add_common(app.add_subcommand(names[i], descs[i]), o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return run_command(app.get_subcommands().front()->get_name(), o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
