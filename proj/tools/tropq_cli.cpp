// Command-line front end: census enumeration and analysis of smooth tropical
// plane quartics, per-curve reports, and SVG rendering.
//
// Exit codes: 0 success; 2 a machine-checked theorem failed on some input
// (the interesting outcome); 3 resource or parse errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tropq/census.hpp"
#include "tropq/json_io.hpp"
#include "tropq/svg.hpp"

namespace fs = std::filesystem;
using namespace tropq;

namespace {

struct RunConfig {
    int degree = 4;
    unsigned seed = 0;
    int jobs = 1;
    std::string out = ".";
    std::string checks = "all";
    std::string format = "json";
};

json config_json(const RunConfig& cfg) {
    return json{{"degree", cfg.degree}, {"seed", cfg.seed},     {"jobs", cfg.jobs},
                {"out", cfg.out},       {"checks", cfg.checks}, {"format", cfg.format},
                {"height_policy", "lp"}};
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw resource_limit_error("cannot open " + path.string() + " for writing");
    os << content;
}

int cmd_enumerate(const RunConfig& cfg) {
    auto ts = enumerate_unimodular_triangulations(cfg.degree);
    auto orbits = s3_orbits(ts);
    int regular_orbits = 0, regular_triangulations = 0;
    if (cfg.checks == "all") {
        for (const auto& orb : orbits)
            if (try_regular_heights(orb.representative)) {
                ++regular_orbits;
                regular_triangulations += (int)orb.members.size();
            }
    }

    fs::create_directories(cfg.out);
    std::ostringstream body;
    for (const auto& t : ts) {
        write_triangulation(body, t);
        body << "\n";
    }
    fs::path tfile = fs::path(cfg.out) / ("triangulations_d" + std::to_string(cfg.degree) + ".txt");
    write_file(tfile, body.str());

    json j{{"config", config_json(cfg)},
           {"degree", cfg.degree},
           {"triangulations", (int)ts.size()},
           {"orbits", (int)orbits.size()},
           {"file", tfile.string()}};
    if (cfg.checks == "all") {
        j["regular_triangulations"] = regular_triangulations;
        j["regular_orbits"] = regular_orbits;
    }
    if (cfg.format == "table") {
        std::cout << (int)ts.size() << " triangulations, " << (int)orbits.size() << " orbits";
        if (cfg.checks == "all")
            std::cout << " (" << regular_triangulations << " regular in " << regular_orbits
                      << " regular orbits)";
        std::cout << "\n";
    } else {
        std::cout << j.dump() << "\n";
    }
    return 0;
}

int cmd_census(const RunConfig& cfg) {
    CensusResult res = run_census(cfg.degree, cfg.jobs, cfg.checks == "all");

    fs::create_directories(cfg.out);
    std::ostringstream stream;
    for (const auto& r : res.records) stream << census_record_json(r).dump() << "\n";
    json summary = census_summary_json(res.summary);
    summary["config"] = config_json(cfg);
    stream << summary.dump() << "\n";
    fs::path rfile = fs::path(cfg.out) / ("census_d" + std::to_string(cfg.degree) + ".ndjson");
    write_file(rfile, stream.str());

    if (cfg.format == "table") {
        std::cout << res.summary.triangulations << " triangulations, " << res.summary.orbits
                  << " orbits, " << res.summary.regular_triangulations << " regular ("
                  << res.summary.regular_orbits << " orbits)\n";
        for (const auto& [ty, n] : res.summary.type_orbit_counts)
            std::cout << "  " << ty << ": " << n << " orbits\n";
        std::cout << "hyperelliptic: " << res.summary.hyperelliptic << "\n";
    } else {
        std::cout << summary.dump() << "\n";
    }
    return 0;
}

CurveAnalysis load_and_analyze(const std::string& tri_file, const std::string& heights_file,
                               bool with_bitangents) {
    std::ifstream tis(tri_file);
    if (!tis) throw resource_limit_error("cannot open " + tri_file);
    Triangulation t = read_triangulation(tis);
    HeightFunction h;
    if (!heights_file.empty()) {
        std::ifstream his(heights_file);
        if (!his) throw resource_limit_error("cannot open " + heights_file);
        h = read_heights(his);
    } else {
        h = regular_heights(t);
    }
    return analyze_curve(t, h, with_bitangents);
}

json analysis_json(const CurveAnalysis& a) {
    json j{{"schema", "curve-report/1"}};
    j["input"] = json{{"triangulation", triangulation_to_string(a.triangulation)},
                      {"heights", [&] {
                           std::ostringstream os;
                           write_heights(os, a.heights);
                           return os.str();
                       }()}};
    j["curve"] = curve_json(a.curve);
    j["skeleton"] = metric_graph_json(a.skel.refined);
    j["minimal_model"] = metric_graph_json(a.skel.minimal.graph);
    j["type"] = graph_type_name(a.type);
    j["genus"] = a.skel.genus();
    json thetas = json::array();
    for (size_t i = 0; i < a.thetas.size(); ++i)
        thetas.push_back(theta_json(a.thetas[i], a.theta_kinds[i]));
    j["theta_characteristics"] = thetas;
    json bits = json::array();
    for (const auto& bc : a.bitangents) bits.push_back(bitangent_json(bc));
    j["bitangents"] = bits;
    if (a.skel.genus() == 3) {
        j["hyperelliptic"] = a.hyperelliptic;
        if (a.witness) j["cut_length_witness"] = witness_json(*a.witness);
    }
    return j;
}

int cmd_analyze(const RunConfig& cfg, const std::string& tri_file,
                const std::string& heights_file) {
    CurveAnalysis a = load_and_analyze(tri_file, heights_file, cfg.checks == "all");
    json j = analysis_json(a);
    j["config"] = config_json(cfg);
    if (cfg.format == "svg") {
        fs::create_directories(cfg.out);
        write_file(fs::path(cfg.out) / "triangulation.svg",
                   render_triangulation_svg(a.triangulation));
        write_file(fs::path(cfg.out) / "curve.svg", render_curve_svg(a));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_render(const RunConfig& cfg, const std::string& report_file) {
    std::ifstream is(report_file);
    if (!is) throw resource_limit_error("cannot open " + report_file);
    json report;
    try {
        report = json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("bad report JSON: ") + e.what());
    }
    if (!report.contains("input"))
        throw parse_error("report has no 'input' section to render from");
    std::istringstream tis(report["input"]["triangulation"].get<std::string>());
    std::istringstream his(report["input"]["heights"].get<std::string>());
    Triangulation t = read_triangulation(tis);
    HeightFunction h = read_heights(his);
    CurveAnalysis a = analyze_curve(t, h, cfg.checks == "all");

    fs::create_directories(cfg.out);
    fs::path tri_svg = fs::path(cfg.out) / "triangulation.svg";
    fs::path curve_svg = fs::path(cfg.out) / "curve.svg";
    write_file(tri_svg, render_triangulation_svg(t));
    write_file(curve_svg, render_curve_svg(a));
    std::cout << json{{"triangulation_svg", tri_svg.string()},
                      {"curve_svg", curve_svg.string()}}
                     .dump()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact census and analysis of smooth tropical plane quartic curves"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string tri_file, heights_file, report_file;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--degree", cfg.degree, "Newton triangle degree")->check(CLI::Range(1, 4));
        sub->add_option("--seed", cfg.seed, "seed recorded in run metadata");
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--checks", cfg.checks, "all|fast")
            ->check(CLI::IsMember({"all", "fast"}));
        sub->add_option("--format", cfg.format, "json|table|svg")
            ->check(CLI::IsMember({"json", "table", "svg"}));
    };

    auto* enumerate = app.add_subcommand("enumerate", "enumerate unimodular triangulations");
    add_common(enumerate);
    auto* census = app.add_subcommand("census", "full pipeline over all symmetry orbits");
    add_common(census);
    auto* analyze = app.add_subcommand("analyze", "deep report for one curve");
    add_common(analyze);
    analyze->add_option("triangulation", tri_file, "triangulation file")->required();
    analyze->add_option("--heights", heights_file, "height file (default: computed lift)");
    auto* render = app.add_subcommand("render", "SVG figures from an analyze report");
    add_common(render);
    render->add_option("report", report_file, "report JSON from 'analyze'")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enumerate) return cmd_enumerate(cfg);
        if (*census) return cmd_census(cfg);
        if (*analyze) return cmd_analyze(cfg, tri_file, heights_file);
        if (*render) return cmd_render(cfg, report_file);
    } catch (const theorem_violation_error& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const resource_limit_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
