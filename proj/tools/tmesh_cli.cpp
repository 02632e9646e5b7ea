#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tmesh/conformality.hpp"
#include "tmesh/report.hpp"

using namespace tmesh;

namespace {

enum Exit { kOk = 0, kIo = 1, kInvalid = 2, kInconclusive = 3, kBudget = 4, kStable = 5 };

struct Input {
    std::optional<TMesh> mesh;
    GT gt;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Mesh documents carry "domain", component documents carry "edges".
Input load(const std::string& path)
{
    std::string text = slurp(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(path + ": malformed JSON");
    }
    Input in;
    if (doc.contains("edges")) {
        in.gt = parse_gt(text);
    } else {
        in.mesh = parse_mesh(text);
        in.gt = to_generalized(t_component(*in.mesh));
    }
    return in;
}

TMesh load_mesh(const std::string& path)
{
    auto in = load(path);
    if (!in.mesh) throw ParseError(path + ": expected a mesh document, got a component");
    return *in.mesh;
}

void emit(const json& j, bool as_json, const std::function<void()>& human)
{
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        human();
}

std::string edge_label(const GEdge& e)
{
    return std::string(e.orient == Orient::H ? "y=" : "x=") + to_string(e.line) + " [" +
           to_string(e.lo()) + ", " + to_string(e.hi()) + "] n=" + std::to_string(e.vertices.size());
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spline-space dimension analysis over T-meshes"};
    app.require_subcommand(1);

    std::size_t degree = 3, floor_degree = 0;
    bool as_json = false, dump_matrix = false, woven = false;
    std::uint64_t seed = 0;
    std::size_t budget = 1000, draws = 100, steps = 5, lattice = 12;
    std::string path, path_b, out_path;
    std::optional<std::size_t> target_edge;
    std::string target_coord;

    auto add_degree = [&](CLI::App* c) { c->add_option("-d,--degree", degree, "Polynomial degree d")->capture_default_str(); };
    auto add_json = [&](CLI::App* c) { c->add_flag("--json", as_json, "Print JSON"); };

    auto* validate_cmd = app.add_subcommand("validate", "Check the T-mesh axioms");
    validate_cmd->add_option("mesh", path)->required();
    add_json(validate_cmd);

    auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis report");
    analyze_cmd->add_option("mesh", path)->required();
    add_degree(analyze_cmd);
    add_json(analyze_cmd);
    analyze_cmd->add_flag("--dump-matrix", dump_matrix, "Include conformality matrices");

    auto* dim_cmd = app.add_subcommand("dimension", "Spline space dimension by every applicable formula");
    dim_cmd->add_option("mesh", path)->required();
    add_degree(dim_cmd);
    add_json(dim_cmd);

    auto* part_cmd = app.add_subcommand("partition", "Complete partition of the T-connected component");
    part_cmd->add_option("input", path, "Mesh or component file")->required();
    add_degree(part_cmd);
    add_json(part_cmd);

    auto* iso_cmd = app.add_subcommand("isomorphic", "Structural isomorphism of two meshes");
    iso_cmd->add_option("a", path)->required();
    iso_cmd->add_option("b", path_b)->required();
    add_json(iso_cmd);

    auto* sim_cmd = app.add_subcommand("similar", "Structural similarity of two components");
    sim_cmd->add_option("a", path)->required();
    sim_cmd->add_option("b", path_b)->required();
    sim_cmd->add_option("--budget", budget, "Search node budget");
    add_json(sim_cmd);

    auto* wit_cmd = app.add_subcommand("witness", "Search for a rank-instability witness");
    wit_cmd->add_option("input", path, "Mesh or component file")->required();
    add_degree(wit_cmd);
    add_json(wit_cmd);
    wit_cmd->add_option("--seed", seed, "Seed for the sampling fallback")->required();
    wit_cmd->add_option("--budget", budget, "Sampling attempts")->capture_default_str();
    wit_cmd->add_option("--target-edge", target_edge, "Component edge index of the target mono-vertex");
    wit_cmd->add_option("--target-coord", target_coord, "Coordinate of the target along its edge");

    auto* sample_cmd = app.add_subcommand("sample", "Rank histogram over the structurally similar class");
    sample_cmd->add_option("input", path, "Mesh or component file")->required();
    add_degree(sample_cmd);
    sample_cmd->add_option("-n,--draws", draws)->capture_default_str();
    sample_cmd->add_option("--seed", seed)->required();
    add_json(sample_cmd);

    auto* gen_cmd = app.add_subcommand("gen-random", "Seeded random T-mesh");
    gen_cmd->add_option("--seed", seed)->required();
    gen_cmd->add_option("--steps", steps, "Refinement steps")->capture_default_str();
    gen_cmd->add_option("-d,--degree", floor_degree, "Degree floor (0 disables)");
    gen_cmd->add_option("--lattice", lattice)->capture_default_str();
    gen_cmd->add_flag("--woven", woven, "Box of crossing t-edges; -d bounds the cuts inside the box");
    gen_cmd->add_option("-o", out_path, "Output file (stdout if omitted)");

    auto* render_cmd = app.add_subcommand("render", "SVG drawing of a mesh");
    render_cmd->add_option("mesh", path)->required();
    render_cmd->add_option("-o", out_path, "Output SVG")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            ValidationReport rep;
            try {
                rep = validate(parse_mesh_unchecked(slurp(path)));
            } catch (const ParseError& e) {
                rep.issues.push_back({"schema", e.what()});
            }
            emit(validation_report(rep), as_json, [&] {
                if (rep.ok()) std::cout << "valid\n";
                for (const auto& i : rep.issues) std::cout << i.kind << ": " << i.message << "\n";
            });
            return rep.ok() ? kOk : kInvalid;
        }
        if (analyze_cmd->parsed()) {
            auto m = load_mesh(path);
            auto j = analyze_report(m, degree, dump_matrix);
            emit(j, as_json, [&] {
                const auto& st = j["stats"];
                std::cout << "c=" << st["c"] << " t=" << st["t"] << " n_v=" << st["n_v"]
                          << " rays=" << st["rays"] << "\n";
                std::cout << "rank=" << j["rank"] << " s=" << j["s"]
                          << " diagonalizable=" << j["diagonalizable"] << "\n";
                std::cout << "dim=" << j["dimension"]["general"] << "\n";
                for (const auto& w : j["warnings"]) std::cout << "warning: " << w.get<std::string>() << "\n";
            });
            return kOk;
        }
        if (dim_cmd->parsed()) {
            auto j = dimension_report(load_mesh(path), degree);
            emit(j, as_json, [&] {
                std::cout << "general " << j["general"] << "\n";
                std::cout << "diagonal " << (j["diagonal"].is_null() ? std::string("n/a") : j["diagonal"].dump()) << "\n";
                std::cout << "cndc " << j["cndc"] << "\n";
            });
            return kOk;
        }
        if (part_cmd->parsed()) {
            auto in = load(path);
            auto j = partition_report(in.gt, degree);
            emit(j, as_json, [&] {
                std::cout << "t=" << j["t"] << " s=" << j["s"] << "\n";
                for (const auto& c : j["cndc"])
                    std::cout << "cndc " << c["index"] << ": "
                              << edge_label(in.gt.edges[c["index"].get<std::size_t>()]) << "\n";
                std::cout << "order " << j["order"].dump() << "\n";
                std::cout << "rank identity " << j["rank_identity"]["lhs"] << " = "
                          << j["rank_identity"]["rhs"] << "\n";
            });
            return kOk;
        }
        if (iso_cmd->parsed()) {
            auto r = structurally_isomorphic(load_mesh(path), load_mesh(path_b));
            emit(isomorphism_json(r), as_json, [&] {
                if (!r) {
                    std::cout << "not isomorphic\n";
                    return;
                }
                std::cout << "isomorphic via " << transform_name(r->transform) << "\n";
                for (const auto& [a, b] : r->edges) std::cout << a << " -> " << b << "\n";
            });
            return kOk;
        }
        if (sim_cmd->parsed()) {
            auto r = structurally_similar(load(path).gt, load(path_b).gt, budget);
            emit(similarity_json(r), as_json, [&] {
                if (r.status == SearchStatus::Found) {
                    std::cout << "similar\n";
                    for (std::size_t i = 0; i < r.map.size(); ++i) std::cout << i << " -> " << r.map[i] << "\n";
                } else {
                    std::cout << (r.status == SearchStatus::None ? "not similar\n" : "budget exceeded\n");
                }
            });
            return r.status == SearchStatus::BudgetExceeded ? kBudget : kOk;
        }
        if (wit_cmd->parsed()) {
            auto in = load(path);
            WitnessOptions opts;
            opts.seed = seed;
            opts.budget = budget;
            if (target_edge || !target_coord.empty()) {
                if (!target_edge || target_coord.empty())
                    throw CLI::ValidationError("--target-edge and --target-coord go together");
                opts.target = WitnessTarget{*target_edge, parse_rational(target_coord)};
            }
            auto w = witness_search(in.gt, degree, opts);
            auto j = witness_report(w);
            emit(j, as_json, [&] {
                std::cout << status_name(w.status) << " (" << method_name(w.method) << ")\n";
                if (w.witness)
                    std::cout << "edge " << *w.target_edge << ": " << to_string(*w.original) << " -> "
                              << to_string(*w.witness) << "\n";
                std::cout << "rank " << w.rank_before << " -> " << w.rank_after << "\n";
            });
            switch (w.status) {
            case WitnessStatus::WitnessFound: return kOk;
            case WitnessStatus::StableByDiagonalizability: return kStable;
            case WitnessStatus::Inconclusive: return kInconclusive;
            }
        }
        if (sample_cmd->parsed()) {
            auto hist = sample_similar(load(path).gt, degree, draws, seed);
            auto j = histogram_json(hist);
            emit(j, as_json, [&] {
                for (const auto& [r, c] : hist) std::cout << "rank " << r << ": " << c << "\n";
            });
            return kOk;
        }
        if (gen_cmd->parsed()) {
            auto m = woven ? random_woven_mesh(seed, floor_degree, std::max<std::size_t>(lattice, 16))
                           : random_mesh(seed, {steps, floor_degree, lattice});
            std::string text = mesh_to_json(m) + "\n";
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream(out_path) << text;
            }
            return kOk;
        }
        if (render_cmd->parsed()) {
            auto svg = render_svg(load_mesh(path));
            std::ofstream out(out_path);
            if (!out) throw std::ios_base::failure("cannot write " + out_path);
            out << svg;
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const InvalidGeometry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kIo;
}
