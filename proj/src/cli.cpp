#include "repfilter/cli.hpp"

#include "repfilter/config_io.hpp"
#include "repfilter/error.hpp"
#include "repfilter/event_log.hpp"
#include "repfilter/snapshot.hpp"
#include "repfilter/trust.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

namespace repfilter {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string input;
    std::string config;
    std::string out;
    std::string x;
    std::string y;
    bool print_config = false;
};

EngineConfig engine_config(const Options& o) {
    return o.config.empty() ? EngineConfig{} : load_engine_config_file(o.config);
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << contents;
    f.close();
    if (!f) {
        throw Error("cannot write '" + path.string() + "'");
    }
}

void make_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create directory '" + dir + "': " + ec.message());
    }
}

std::string trust_line(const TrustScore& t) {
    switch (t.basis) {
    case TrustBasis::Direct:
        return "direct " + t.value.to_string();
    case TrustBasis::Default:
        return "default " + t.value.to_string();
    case TrustBasis::Inferred:
        break;
    }
    return "inferred via " + t.via->str() + " " + t.value.to_string();
}

int replay_cmd(const Options& o, std::ostream& out) {
    const EngineConfig cfg = engine_config(o);
    if (o.print_config) {
        out << engine_config_to_json(cfg);
        return kExitOk;
    }
    const auto events = read_event_log_file(o.input);
    const ReplayResult result = replay(events, cfg);
    make_dir(o.out);
    std::ostringstream decisions;
    write_decision_log(decisions, result.decisions);
    write_file(fs::path(o.out) / "decisions.jsonl", decisions.str());
    write_file(fs::path(o.out) / "snapshot.json", snapshot(result.graph));
    return kExitOk;
}

int simulate_cmd(const Options& o, std::ostream& out) {
    const SimConfig cfg = load_sim_config_file(o.input);
    if (o.print_config) {
        out << sim_config_to_json(cfg);
        return kExitOk;
    }
    const SimResult result = run_simulation(cfg);
    make_dir(o.out);
    std::ostringstream events;
    write_event_log(events, result.events);
    std::ostringstream decisions;
    write_decision_log(decisions, result.decisions);
    write_file(fs::path(o.out) / "events.jsonl", events.str());
    write_file(fs::path(o.out) / "decisions.jsonl", decisions.str());
    write_file(fs::path(o.out) / "metrics.csv", metrics_csv(result.metrics));
    write_file(fs::path(o.out) / "snapshot.json", snapshot(result.final_graph));
    return kExitOk;
}

int trust_cmd(const Options& o, std::ostream& out) {
    const EngineConfig cfg = engine_config(o);
    if (o.print_config) {
        out << engine_config_to_json(cfg);
        return kExitOk;
    }
    const SocialGraph graph = load_snapshot_file(o.input);
    const ProfileId x(o.x);
    const ProfileId y(o.y);
    for (const auto* id : {&x, &y}) {
        if (!graph.has_profile(*id)) {
            throw GraphError("unknown profile '" + id->str() + "'");
        }
    }
    if (x == y) {
        throw GraphError("trust of a profile in itself is undefined");
    }
    if (graph.is_connected(x, y)) {
        out << trust_line(direct_trust(graph, x, y, cfg.trust)) << "\n";
        return kExitOk;
    }
    if (auto t = infer_trust(graph, x, y, cfg.trust)) {
        out << trust_line(*t) << "\n";
        return kExitOk;
    }
    out << "fallback\n";
    return kExitNoTrust;
}

int stats_cmd(const Options& o, std::ostream& out) {
    const SocialGraph graph = load_snapshot_file(o.input);
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t rows = 0;
    for (const auto& id : graph.profiles()) {
        for (const auto& [_, rec] : graph.dataset(id)) {
            accepted += rec.incoming;
            rejected += rec.rejected;
            ++rows;
        }
    }
    out << "profiles=" << graph.profile_count() << " edges=" << graph.edge_count()
        << " rows=" << rows << " accepted=" << accepted << " rejected=" << rejected << "\n";
    return kExitOk;
}

int export_weights_cmd(const Options& o, std::ostream& out) {
    const EngineConfig cfg = engine_config(o);
    if (o.print_config) {
        out << engine_config_to_json(cfg);
        return kExitOk;
    }
    const SocialGraph graph = load_snapshot_file(o.input);
    std::vector<std::tuple<ProfileId, ProfileId, Rational>> rows;
    for (const auto& e : graph.edges()) {
        auto [forward, backward] = edge_weight(graph, e.a, e.b, cfg.trust);
        rows.emplace_back(e.a, e.b, forward.value);
        rows.emplace_back(e.b, e.a, backward.value);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& l, const auto& r) {
        return std::tie(std::get<0>(l), std::get<1>(l)) < std::tie(std::get<0>(r), std::get<1>(r));
    });
    std::string csv = "src,dst,trust\n";
    for (const auto& [src, dst, value] : rows) {
        csv += src.str() + "," + dst.str() + "," + value.to_decimal(6) + "\n";
    }
    const fs::path path(o.out);
    if (path.has_parent_path()) {
        make_dir(path.parent_path().string());
    }
    write_file(path, csv);
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reputation-based interaction filter for social-network event streams", "repfilter"};
    app.require_subcommand(1);
    Options o;
    std::function<int(const Options&, std::ostream&)> handler;

    auto add_config = [&o](CLI::App* sub) {
        sub->add_option("-c,--config", o.config, "Engine config (JSON)")->check(CLI::ExistingFile);
        sub->add_flag("--print-config", o.print_config, "Print the effective config and exit");
    };

    auto* replay_app = app.add_subcommand("replay", "Replay an event log through the filter");
    replay_app->add_option("events", o.input, "Event log (JSON Lines)")->required()->check(CLI::ExistingFile);
    replay_app->add_option("-o,--out", o.out, "Output directory")->required();
    add_config(replay_app);
    replay_app->callback([&] { handler = replay_cmd; });

    auto* sim_app = app.add_subcommand("simulate", "Run an agent-based scenario");
    sim_app->add_option("scenario", o.input, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    sim_app->add_option("-o,--out", o.out, "Output directory")->required();
    sim_app->add_flag("--print-config", o.print_config, "Print the effective scenario and exit");
    sim_app->callback([&] { handler = simulate_cmd; });

    auto* trust_app = app.add_subcommand("trust", "Query X's trust in Y from a snapshot");
    trust_app->add_option("snapshot", o.input, "Snapshot file")->required()->check(CLI::ExistingFile);
    trust_app->add_option("x", o.x, "Trusting profile")->required();
    trust_app->add_option("y", o.y, "Trusted profile")->required();
    add_config(trust_app);
    trust_app->callback([&] { handler = trust_cmd; });

    auto* stats_app = app.add_subcommand("stats", "Summarize a snapshot");
    stats_app->add_option("snapshot", o.input, "Snapshot file")->required()->check(CLI::ExistingFile);
    stats_app->callback([&] { handler = stats_cmd; });

    auto* export_app = app.add_subcommand("export-weights", "Write directed edge weights as CSV");
    export_app->add_option("snapshot", o.input, "Snapshot file")->required()->check(CLI::ExistingFile);
    export_app->add_option("-o,--out", o.out, "Output CSV path")->required();
    add_config(export_app);
    export_app->callback([&] { handler = export_weights_cmd; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        return handler(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

} // namespace repfilter
