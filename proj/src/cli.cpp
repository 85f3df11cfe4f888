#include "vmlp/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "vmlp/algebra.hpp"
#include "vmlp/errors.hpp"
#include "vmlp/functional.hpp"
#include "vmlp/io.hpp"
#include "vmlp/rng.hpp"
#include "vmlp/train.hpp"

namespace vmlp {

namespace {

std::string format_double(double v) {
    if (v == 0.0) return "0"; // fold -0 into 0 for display
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void print_degeneracy(const DegeneracyReport& report, std::ostream& out) {
    out << "tolerance " << format_double(report.tol) << "\n";
    const int n = static_cast<int>(report.per_component.size());
    for (const ComponentRank& c : report.per_component) {
        out << "component " << c.k << ": rank " << c.rank << "/" << n << ", |det| = "
            << format_double(c.abs_det) << (c.singular ? ", singular" : ", non-singular") << "\n";
    }
    if (report.overall_nondegenerate) {
        out << "overall: non-degenerate\n";
    } else {
        out << "overall: degenerate (singular components:";
        for (int k : report.singular_components()) out << " " << k;
        out << ")\n";
    }
}

void cmd_list(std::ostream& out) {
    for (const std::string& name : catalog_names()) {
        const Algebra a = catalog(name);
        const DegeneracyReport report = is_nondegenerate(a);
        out << name << "\tdim " << a.dim() << "\t";
        if (report.overall_nondegenerate) {
            out << "non-degenerate";
        } else {
            out << "degenerate (singular components:";
            for (int k : report.singular_components()) out << " " << k;
            out << ")";
        }
        out << "\n";
    }
}

void print_matrix(const Matrix& m, std::ostream& out) {
    for (int i = 0; i < m.rows(); ++i) {
        out << " ";
        for (int j = 0; j < m.cols(); ++j) out << " " << format_double(m.at(i, j));
        out << "\n";
    }
}

void cmd_show(const std::string& name, std::ostream& out) {
    const Algebra a = catalog(name);
    out << "name: " << a.name() << "\n";
    out << "dim: " << a.dim() << "\n";
    out << "basis:";
    for (const std::string& l : a.labels()) out << " " << l;
    out << "\n";
    for (int k = 0; k < a.dim(); ++k) {
        out << "B_" << k << ":\n";
        print_matrix(bilinear_matrix(a, k).entries, out);
    }
    print_degeneracy(is_nondegenerate(a), out);
    if (std::optional<Element> id = find_identity(a)) {
        out << "identity:";
        for (double c : id->coeffs()) out << " " << format_double(c);
        out << "\n";
    } else {
        out << "identity: none\n";
    }
}

void cmd_check(const std::string& path, std::ostream& out) {
    const Algebra a = load_algebra_json(path);
    if (!a.name().empty()) out << "name: " << a.name() << "\n";
    out << "dim: " << a.dim() << "\n";
    print_degeneracy(is_nondegenerate(a), out);
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw ValidationError("invalid number \"" + tok + "\" in --coeffs");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw ValidationError("invalid number \"" + tok + "\" in --coeffs");
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError("--coeffs must contain at least one number");
    return out;
}

void cmd_lemma1(const std::string& name, int component, const std::string& coeffs_csv,
                std::ostream& out) {
    const Algebra a = catalog(name);
    const int n = a.dim();
    const std::vector<double> flat = parse_csv_doubles(coeffs_csv);
    if (flat.size() % static_cast<std::size_t>(n) != 0)
        throw ValidationError("--coeffs length " + std::to_string(flat.size()) +
                              " is not a multiple of the algebra dimension " + std::to_string(n));
    LinearFunctional func;
    for (std::size_t off = 0; off < flat.size(); off += n)
        func.coeffs.push_back({flat.begin() + off, flat.begin() + off + n});

    const Representation rep = represent(a, component, func);
    out << "algebra " << name << ", component " << component << ", arity " << func.arity() << "\n";
    for (std::size_t j = 0; j < rep.ys.size(); ++j) {
        out << "y_" << j << ":";
        for (double c : rep.ys[j].coeffs()) out << " " << format_double(c);
        out << "\n";
    }
    out << "residual " << format_double(rep.residual) << "\n";
    const double dev = verify_representation(a, rep, func, 200, 1);
    out << "max deviation over 200 samples: " << format_double(dev) << "\n";
}

struct TrainCliOptions {
    std::string algebra;
    std::string target = "quad2d";
    std::string output_mode = "scalar";
    int hidden = 128;
    int epochs = 1000;
    std::int64_t samples = 1024;
    int batch = 64;
    double lr = 1e-3;
    std::uint64_t seed = 0;
    std::string out_path;
};

void cmd_train(const TrainCliOptions& opt, std::ostream& out, std::ostream& err) {
    const Algebra a = catalog(opt.algebra);
    TrainConfig config;
    config.target = opt.target;
    config.hidden = opt.hidden;
    config.output_mode = output_mode_from_name(opt.output_mode);
    config.activation = Activation::relu;
    config.samples = opt.samples;
    config.epochs = opt.epochs;
    config.batch = opt.batch;
    config.lr = opt.lr;
    config.seed = opt.seed;

    err << "training " << opt.algebra << " on " << opt.target << " ("
        << output_mode_name(config.output_mode) << ", hidden " << config.hidden << ", epochs "
        << config.epochs << ", seed " << config.seed << ")\n";
    const TrainResult result = train(a, config);

    double final_mse = 0.0;
    double min_mse = 0.0;
    if (!result.curve.empty()) {
        final_mse = result.curve.back().mse;
        min_mse = result.curve.front().mse;
        for (const EpochRecord& rec : result.curve) min_mse = std::min(min_mse, rec.mse);
    }
    out << "final mse " << format_double(final_mse) << "\n";
    out << "min mse " << format_double(min_mse) << "\n";
    if (!opt.out_path.empty()) {
        write_curve_csv(opt.out_path, result.curve);
        out << "curve " << opt.out_path << "\n";
    }
}

struct SuiteDef {
    std::string target;
    OutputMode mode;
    std::vector<std::string> algebras;
};

SuiteDef suite_def(const std::string& id) {
    if (id == "2d-scalar") return {"quad2d", OutputMode::scalar, {"A", "B", "C", "D", "E"}};
    if (id == "2d-vector") return {"quad2d", OutputMode::vector, {"A", "C", "E"}};
    if (id == "4d-scalar") return {"quad4d", OutputMode::scalar, {"F", "G", "Q", "HQ", "DC"}};
    if (id == "4d-vector") return {"quad4d", OutputMode::vector, {"F", "G", "Q", "HQ", "DC"}};
    throw ValidationError("unknown suite \"" + id +
                          "\" (valid: 2d-scalar, 2d-vector, 4d-scalar, 4d-vector)");
}

struct ReproOptions {
    std::string suite;
    std::uint64_t seed = 0;
    std::string out_dir;
    int hidden = 128;
    int epochs = 1000;
    std::int64_t samples = 1024;
    int batch = 64;
};

// The real baseline: one independent single-output network over the
// 1-dimensional catalog algebra R per target component, all reading the
// flattened coefficient tuple. Curves combine as the mean over components,
// which equals the per-element MSE of the stacked vector output.
std::vector<EpochRecord> run_baseline(const Dataset& ds, const TrainConfig& config,
                                      std::uint64_t suite_seed) {
    const Algebra real = catalog("R");
    const int n = ds.algebra.dim();
    Rng root(suite_seed);
    root.next_u64(); // dataset seed slot, already consumed by gen_dataset's caller

    std::vector<EpochRecord> combined;
    for (int k = 0; k < n; ++k) {
        const std::uint64_t init_seed = root.next_u64();
        const std::uint64_t shuffle_seed = root.next_u64();
        Dataset flat{real, n, ds.count, ds.inputs, {}, ds.seed};
        flat.targets.resize(static_cast<std::size_t>(ds.count));
        for (std::int64_t s = 0; s < ds.count; ++s)
            flat.targets[static_cast<std::size_t>(s)] =
                ds.targets[static_cast<std::size_t>(s) * n + k];
        VMlp net = VMlp::init(real, n, config.hidden, OutputMode::scalar, config.activation,
                              init_seed);
        TrainResult result = train_on_dataset(std::move(net), flat, config, shuffle_seed);
        if (combined.empty()) {
            combined = std::move(result.curve);
        } else {
            for (std::size_t e = 0; e < combined.size(); ++e)
                combined[e].mse += result.curve[e].mse;
        }
    }
    for (EpochRecord& rec : combined) rec.mse /= static_cast<double>(n);
    return combined;
}

void cmd_repro(const ReproOptions& opt, std::ostream& out, std::ostream& err) {
    const SuiteDef def = suite_def(opt.suite);
    std::filesystem::create_directories(opt.out_dir);

    TrainConfig config;
    config.target = def.target;
    config.hidden = opt.hidden;
    config.activation = Activation::relu;
    config.samples = opt.samples;
    config.epochs = opt.epochs;
    config.batch = opt.batch;
    config.lr = 1e-3;
    config.seed = opt.seed;

    nlohmann::json summary;
    summary["suite"] = opt.suite;
    summary["runs"] = nlohmann::json::array();

    const int total = static_cast<int>(def.algebras.size()) + 1;
    int index = 0;
    auto record_run = [&](const std::string& name, OutputMode mode,
                          const std::vector<EpochRecord>& curve) {
        const std::string file =
            opt.suite + "_" + name + "_seed" + std::to_string(opt.seed) + ".csv";
        write_curve_csv((std::filesystem::path(opt.out_dir) / file).string(), curve);
        double final_mse = 0.0;
        double min_mse = 0.0;
        if (!curve.empty()) {
            final_mse = curve.back().mse;
            min_mse = curve.front().mse;
            for (const EpochRecord& rec : curve) min_mse = std::min(min_mse, rec.mse);
        }
        summary["runs"].push_back({{"algebra", name},
                                   {"output_mode", output_mode_name(mode)},
                                   {"seed", opt.seed},
                                   {"final_mse", final_mse},
                                   {"min_mse", min_mse},
                                   {"curve_file", file}});
        err << "[" << ++index << "/" << total << "] " << name << ": final mse "
            << format_double(final_mse) << "\n";
    };

    for (const std::string& name : def.algebras) {
        config.output_mode = def.mode;
        const TrainResult result = train(catalog(name), config);
        record_run(name, def.mode, result.curve);
    }

    // Baseline shares the suite's dataset (same seed derivation as train()).
    {
        Rng root(opt.seed);
        const std::uint64_t ds_seed = root.next_u64();
        const Algebra a = catalog(def.algebras.front());
        const Dataset ds = gen_dataset(a, def.target, config.samples, ds_seed);
        TrainConfig base_config = config;
        base_config.output_mode = OutputMode::scalar;
        record_run("baseline", OutputMode::scalar, run_baseline(ds, base_config, opt.seed));
    }

    const std::string summary_file =
        opt.suite + "_summary_seed" + std::to_string(opt.seed) + ".json";
    const std::string summary_path = (std::filesystem::path(opt.out_dir) / summary_file).string();
    write_text_atomic(summary_path, summary.dump(2) + "\n");
    out << "summary " << summary_path << "\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"algebras, vector-valued MLPs, and approximation experiments"};
    app.name("vmlp");
    app.require_subcommand(1);

    CLI::App* algebra_cmd = app.add_subcommand("algebra", "inspect and classify algebras");
    algebra_cmd->require_subcommand(1);
    algebra_cmd->add_subcommand("list", "print the catalog with degeneracy flags");

    std::string show_name;
    CLI::App* show_cmd = algebra_cmd->add_subcommand("show", "print one catalog algebra in full");
    show_cmd->add_option("name", show_name, "catalog algebra name")->required();

    std::string check_file;
    CLI::App* check_cmd = algebra_cmd->add_subcommand("check", "classify an algebra JSON file");
    check_cmd->add_option("--file", check_file, "algebra JSON path")->required();

    std::string lemma_algebra;
    int lemma_component = 0;
    std::string lemma_coeffs;
    CLI::App* lemma_cmd =
        algebra_cmd->add_subcommand("lemma1", "represent a linear functional as algebra weights");
    lemma_cmd->add_option("--algebra", lemma_algebra, "catalog algebra name")->required();
    lemma_cmd->add_option("--component", lemma_component, "target component index")->required();
    lemma_cmd->add_option("--coeffs", lemma_coeffs,
                          "functional coefficients, comma-separated, blocks of dim")
        ->required();

    TrainCliOptions topt;
    CLI::App* train_cmd = app.add_subcommand("train", "train one V-MLP and write its curve");
    train_cmd->add_option("--algebra", topt.algebra, "catalog algebra name")->required();
    train_cmd->add_option("--target", topt.target, "target function (quad2d|quad4d)");
    train_cmd->add_option("--output-mode", topt.output_mode, "scalar or vector");
    train_cmd->add_option("--hidden", topt.hidden, "hidden units");
    train_cmd->add_option("--epochs", topt.epochs, "training epochs");
    train_cmd->add_option("--samples", topt.samples, "dataset size");
    train_cmd->add_option("--batch", topt.batch, "minibatch size");
    train_cmd->add_option("--lr", topt.lr, "Adam learning rate");
    train_cmd->add_option("--seed", topt.seed, "run seed");
    train_cmd->add_option("--out", topt.out_path, "curve CSV output path");

    ReproOptions ropt;
    CLI::App* repro_cmd = app.add_subcommand("repro", "run an experiment suite");
    repro_cmd->add_option("--suite", ropt.suite,
                          "2d-scalar, 2d-vector, 4d-scalar, or 4d-vector")
        ->required();
    repro_cmd->add_option("--seed", ropt.seed, "suite seed");
    repro_cmd->add_option("--out-dir", ropt.out_dir, "output directory")->required();
    repro_cmd->add_option("--hidden", ropt.hidden, "hidden units per run");
    repro_cmd->add_option("--epochs", ropt.epochs, "training epochs per run");
    repro_cmd->add_option("--samples", ropt.samples, "dataset size per run");
    repro_cmd->add_option("--batch", ropt.batch, "minibatch size per run");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << app.help();
        return 1;
    }

    try {
        if (algebra_cmd->parsed()) {
            if (algebra_cmd->get_subcommand("list")->parsed()) cmd_list(out);
            else if (show_cmd->parsed()) cmd_show(show_name, out);
            else if (check_cmd->parsed()) cmd_check(check_file, out);
            else if (lemma_cmd->parsed()) cmd_lemma1(lemma_algebra, lemma_component, lemma_coeffs, out);
        } else if (train_cmd->parsed()) {
            cmd_train(topt, out, err);
        } else if (repro_cmd->parsed()) {
            cmd_repro(ropt, out, err);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace vmlp
