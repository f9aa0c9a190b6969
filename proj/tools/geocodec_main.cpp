// Command-line front end: encoding, decoding, registry management, network
// building, namespace math and evaluation runs. Exit codes: 0 success,
// 1 usage error, 2 data error. Every subcommand accepts --json for a single
// machine-readable object on stdout. No subcommand touches the network.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <geocodec/capacity.hpp>
#include <geocodec/errors.hpp>
#include <geocodec/eval.hpp>
#include <geocodec/geo.hpp>
#include <geocodec/grid_code.hpp>
#include <geocodec/robocode.hpp>
#include <geocodec/short_code.hpp>
#include <geocodec/word_code.hpp>

namespace {

using nlohmann::json;
using namespace geocodec;

struct Options {
    bool json_output = false;

    double lat = 0, lng = 0;
    int length = 11;
    std::string code;
    std::string wordlist;
    std::string words_text;
    std::string registry_path;
    std::string vanity;
    std::uint64_t seed = 0;
    std::string geojson_path;
    std::string config_path;
    std::string out_path;
    std::string net_path;
    std::uint64_t alphabet = 0;
    std::uint64_t population = 0;
    std::uint64_t word_count = 0;
    std::uint64_t k = 0;
    double side_m = 0;
    std::string scheme;
    std::string model = "gps";
    std::uint64_t trials = 10000;
    std::uint64_t pairs = 10000;
    std::uint64_t samples = 1000;
    int position = -1;
};

void emit(const Options& opt, const json& payload, const std::string& text) {
    if (opt.json_output)
        std::cout << payload.dump() << "\n";
    else
        std::cout << text << "\n";
}

std::string format_bounds_text(const CellBounds& b) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "south_deg=%.9f west_deg=%.9f north_deg=%.9f east_deg=%.9f "
                  "center_lat_deg=%.9f center_lng_deg=%.9f",
                  b.south, b.west, b.north, b.east, b.center().lat, b.center().lng);
    return buf;
}

json bounds_json(const CellBounds& b) {
    return json{{"south", b.south},
                {"west", b.west},
                {"north", b.north},
                {"east", b.east},
                {"center", {{"lat", b.center().lat}, {"lng", b.center().lng}}}};
}

std::string format_point_text(const GeoPoint& p) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "lat_deg=%.9f lng_deg=%.9f", p.lat, p.lng);
    return buf;
}

words::WordList load_wordlist(const Options& opt) {
    return opt.wordlist.empty() ? words::WordList::synthetic() : words::WordList::load(opt.wordlist);
}

eval::ErrorModel pick_model(const std::string& name) {
    if (name == "gps") return eval::ErrorModel::gps();
    if (name == "map" || name == "map_marking") return eval::ErrorModel::map_marking();
    if (name == "zero") return eval::ErrorModel::zero_error();
    throw DomainError("eval: unknown error model \"" + name + "\"");
}

void run_eval(const std::string& which, const Options& opt) {
    std::string csv;
    json summary;
    if (which == "perturb") {
        eval::PerturbationReport report;
        if (opt.scheme == "grid")
            report = eval::perturb_grid(opt.trials, opt.seed, opt.position);
        else if (opt.scheme == "word")
            report = eval::perturb_word(load_wordlist(opt), opt.trials, opt.seed);
        else
            throw DomainError("eval perturb: scheme must be grid or word");
        csv = eval::to_csv(report);
        summary = {{"scheme", report.scheme},
                   {"trials", report.trials},
                   {"invalid", report.invalid},
                   {"out", opt.out_path}};
        if (report.p50_m) {
            summary["p50_m"] = *report.p50_m;
            summary["p90_m"] = *report.p90_m;
            summary["max_m"] = *report.max_m;
        }
    } else if (which == "locality") {
        eval::LocalityProfile profile;
        if (opt.scheme == "grid")
            profile = eval::locality_grid(opt.pairs, opt.seed);
        else if (opt.scheme == "word")
            profile = eval::locality_word(load_wordlist(opt), opt.pairs, opt.seed);
        else if (opt.scheme == "short")
            profile = eval::locality_short(shortcode::Registry::load(opt.registry_path),
                                           opt.pairs, opt.seed);
        else
            throw DomainError("eval locality: scheme must be grid, word or short");
        csv = eval::to_csv(profile);
        summary = {{"scheme", profile.scheme}, {"trials", profile.trials}, {"out", opt.out_path}};
    } else if (which == "stability") {
        const eval::ErrorModel model = pick_model(opt.model);
        eval::StabilityReport report;
        if (opt.scheme == "grid")
            report = eval::stability_grid(opt.length, model, opt.trials, opt.seed);
        else if (opt.scheme == "word")
            report = eval::stability_word(model, opt.trials, opt.seed);
        else if (opt.scheme == "robo")
            report = eval::stability_robocode(robo::RoadNetwork::load(opt.net_path), model,
                                              opt.trials, opt.seed);
        else
            throw DomainError("eval stability: scheme must be grid, word or robo");
        csv = eval::to_csv(report);
        summary = {{"scheme", report.scheme},
                   {"model", report.model},
                   {"stable_fraction", report.stable_fraction},
                   {"out", opt.out_path}};
    } else {  // interp
        const auto report = eval::interpolation_error(robo::RoadNetwork::load(opt.net_path),
                                                      opt.samples, opt.seed);
        csv = eval::to_csv(report);
        summary = {{"trials", report.trials}, {"out", opt.out_path}};
        if (report.p90_m) summary["p90_m"] = *report.p90_m;
    }
    eval::write_text_file(opt.out_path, csv);
    std::string text = "report written to " + opt.out_path;
    emit(opt, summary, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geocodec: offline location codes (grid, word, short, street) and their "
                 "evaluation harness"};
    app.require_subcommand(1);
    Options opt;

    const auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", opt.json_output); };

    // grid
    CLI::App* grid_cmd = app.add_subcommand("grid", "hierarchical grid codes");
    grid_cmd->require_subcommand(1);
    CLI::App* grid_enc = grid_cmd->add_subcommand("encode", "point to grid code");
    grid_enc->add_option("--lat", opt.lat)->required();
    grid_enc->add_option("--lng", opt.lng)->required();
    grid_enc->add_option("--length", opt.length)->default_val(11);
    add_json(grid_enc);
    CLI::App* grid_dec = grid_cmd->add_subcommand("decode", "grid code to cell bounds");
    grid_dec->add_option("--code", opt.code)->required();
    add_json(grid_dec);

    // words
    CLI::App* words_cmd = app.add_subcommand("words", "word-triple codes");
    words_cmd->require_subcommand(1);
    CLI::App* words_enc = words_cmd->add_subcommand("encode", "point to word triple");
    words_enc->add_option("--lat", opt.lat)->required();
    words_enc->add_option("--lng", opt.lng)->required();
    words_enc->add_option("--wordlist", opt.wordlist)->required();
    add_json(words_enc);
    CLI::App* words_dec = words_cmd->add_subcommand("decode", "word triple to cell bounds");
    words_dec->add_option("--words", opt.words_text)->required();
    words_dec->add_option("--wordlist", opt.wordlist)->required();
    add_json(words_dec);

    // short
    CLI::App* short_cmd = app.add_subcommand("short", "registry short codes");
    short_cmd->require_subcommand(1);
    CLI::App* short_alloc = short_cmd->add_subcommand("alloc", "allocate a code for a point");
    short_alloc->add_option("--lat", opt.lat)->required();
    short_alloc->add_option("--lng", opt.lng)->required();
    short_alloc->add_option("--registry", opt.registry_path)->required();
    short_alloc->add_option("--vanity", opt.vanity);
    short_alloc->add_option("--seed", opt.seed);
    add_json(short_alloc);
    CLI::App* short_res = short_cmd->add_subcommand("resolve", "look a code up");
    short_res->add_option("--code", opt.code)->required();
    short_res->add_option("--registry", opt.registry_path)->required();
    add_json(short_res);

    // robo
    CLI::App* robo_cmd = app.add_subcommand("robo", "street-relative codes");
    robo_cmd->require_subcommand(1);
    CLI::App* robo_build = robo_cmd->add_subcommand("build", "ingest a road network");
    robo_build->add_option("--geojson", opt.geojson_path)->required();
    robo_build->add_option("--config", opt.config_path)->required();
    robo_build->add_option("--out", opt.out_path)->required();
    add_json(robo_build);
    CLI::App* robo_enc = robo_cmd->add_subcommand("encode", "point to robocode");
    robo_enc->add_option("--lat", opt.lat)->required();
    robo_enc->add_option("--lng", opt.lng)->required();
    robo_enc->add_option("--net", opt.net_path)->required();
    add_json(robo_enc);
    CLI::App* robo_dec = robo_cmd->add_subcommand("decode", "robocode to point");
    robo_dec->add_option("--code", opt.code)->required();
    robo_dec->add_option("--net", opt.net_path)->required();
    add_json(robo_dec);

    // capacity
    CLI::App* cap_cmd = app.add_subcommand("capacity", "namespace combinatorics");
    cap_cmd->require_subcommand(1);
    CLI::App* cap_minlen = cap_cmd->add_subcommand("minlen", "minimum code length");
    cap_minlen->add_option("--alphabet", opt.alphabet)->required();
    cap_minlen->add_option("--population", opt.population)->required();
    add_json(cap_minlen);
    CLI::App* cap_arr = cap_cmd->add_subcommand("arrangements", "ordered distinct word picks");
    cap_arr->add_option("--words", opt.word_count)->required();
    cap_arr->add_option("--k", opt.k)->required();
    add_json(cap_arr);
    CLI::App* cap_cells = cap_cmd->add_subcommand("cells", "cells tiling the Earth");
    cap_cells->add_option("--side-m", opt.side_m)->required();
    add_json(cap_cells);

    // eval
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluation harness");
    eval_cmd->require_subcommand(1);
    CLI::App* ev_perturb = eval_cmd->add_subcommand("perturb", "one-symbol edit displacement");
    ev_perturb->add_option("--scheme", opt.scheme)->required();
    ev_perturb->add_option("--trials", opt.trials);
    ev_perturb->add_option("--position", opt.position);
    ev_perturb->add_option("--wordlist", opt.wordlist);
    ev_perturb->add_option("--seed", opt.seed)->required();
    ev_perturb->add_option("--out", opt.out_path)->required();
    add_json(ev_perturb);
    CLI::App* ev_loc = eval_cmd->add_subcommand("locality", "code similarity vs distance");
    ev_loc->add_option("--scheme", opt.scheme)->required();
    ev_loc->add_option("--pairs", opt.pairs);
    ev_loc->add_option("--wordlist", opt.wordlist);
    ev_loc->add_option("--registry", opt.registry_path);
    ev_loc->add_option("--seed", opt.seed)->required();
    ev_loc->add_option("--out", opt.out_path)->required();
    add_json(ev_loc);
    CLI::App* ev_stab = eval_cmd->add_subcommand("stability", "code survival under capture error");
    ev_stab->add_option("--scheme", opt.scheme)->required();
    ev_stab->add_option("--model", opt.model);
    ev_stab->add_option("--length", opt.length)->default_val(11);
    ev_stab->add_option("--trials", opt.trials);
    ev_stab->add_option("--net", opt.net_path);
    ev_stab->add_option("--seed", opt.seed)->required();
    ev_stab->add_option("--out", opt.out_path)->required();
    add_json(ev_stab);
    CLI::App* ev_interp = eval_cmd->add_subcommand("interp", "neighbor interpolation error");
    ev_interp->add_option("--net", opt.net_path)->required();
    ev_interp->add_option("--samples", opt.samples);
    ev_interp->add_option("--seed", opt.seed)->required();
    ev_interp->add_option("--out", opt.out_path)->required();
    add_json(ev_interp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (grid_enc->parsed()) {
            const grid::GridCode code = grid::encode(GeoPoint(opt.lat, opt.lng), opt.length);
            emit(opt, {{"code", code.display()}}, code.display());
        } else if (grid_dec->parsed()) {
            const CellBounds b = grid::decode(grid::GridCode::parse(opt.code));
            emit(opt, bounds_json(b), format_bounds_text(b));
        } else if (words_enc->parsed()) {
            const words::WordList list = words::WordList::load(opt.wordlist);
            const words::WordTriple t = words::encode(GeoPoint(opt.lat, opt.lng), list);
            emit(opt, {{"words", t.display()}}, t.display());
        } else if (words_dec->parsed()) {
            const words::WordList list = words::WordList::load(opt.wordlist);
            const CellBounds b = words::decode(words::WordTriple::parse(opt.words_text), list);
            emit(opt, bounds_json(b), format_bounds_text(b));
        } else if (short_alloc->parsed()) {
            namespace fs = std::filesystem;
            shortcode::Registry reg = fs::exists(opt.registry_path)
                                          ? shortcode::Registry::load(opt.registry_path)
                                          : shortcode::Registry(6, opt.seed);
            const shortcode::ShortCodeRecord rec =
                opt.vanity.empty() ? reg.allocate(GeoPoint(opt.lat, opt.lng))
                                   : reg.allocate_vanity(GeoPoint(opt.lat, opt.lng), opt.vanity);
            reg.save(opt.registry_path);
            emit(opt, {{"code", rec.code}}, rec.code);
        } else if (short_res->parsed()) {
            const shortcode::Registry reg = shortcode::Registry::load(opt.registry_path);
            const GeoPoint p = reg.resolve(opt.code);
            emit(opt, {{"lat", p.lat}, {"lng", p.lng}}, format_point_text(p));
        } else if (robo_build->parsed()) {
            const robo::CityConfig cfg = robo::CityConfig::from_json_file(opt.config_path);
            const robo::RoadNetwork net = robo::RoadNetwork::from_geojson_file(opt.geojson_path, cfg);
            net.save(opt.out_path);
            std::size_t derived = 0;
            for (const auto& s : net.streets()) derived += s.derived_name.has_value();
            emit(opt,
                 {{"streets", net.streets().size()},
                  {"derived", derived},
                  {"out", opt.out_path}},
                 "network written to " + opt.out_path + " (" +
                     std::to_string(net.streets().size()) + " streets, " +
                     std::to_string(derived) + " derived names)");
        } else if (robo_enc->parsed()) {
            const robo::RoadNetwork net = robo::RoadNetwork::load(opt.net_path);
            const robo::Robocode rc = net.encode(GeoPoint(opt.lat, opt.lng));
            emit(opt, {{"code", rc.display()}}, rc.display());
        } else if (robo_dec->parsed()) {
            const robo::RoadNetwork net = robo::RoadNetwork::load(opt.net_path);
            const GeoPoint p = net.decode(robo::Robocode::parse(opt.code));
            emit(opt, {{"lat", p.lat}, {"lng", p.lng}}, format_point_text(p));
        } else if (cap_minlen->parsed()) {
            const int n = capacity::min_code_length(opt.alphabet, opt.population);
            emit(opt, {{"value", n}}, std::to_string(n));
        } else if (cap_arr->parsed()) {
            const std::uint64_t n = capacity::distinct_word_arrangements(opt.word_count, opt.k);
            emit(opt, {{"value", n}}, std::to_string(n));
        } else if (cap_cells->parsed()) {
            const std::uint64_t n = capacity::earth_cell_count(opt.side_m);
            emit(opt, {{"value", n}}, std::to_string(n));
        } else if (ev_perturb->parsed()) {
            run_eval("perturb", opt);
        } else if (ev_loc->parsed()) {
            run_eval("locality", opt);
        } else if (ev_stab->parsed()) {
            run_eval("stability", opt);
        } else if (ev_interp->parsed()) {
            run_eval("interp", opt);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
