#ifndef IMPLICITFORGE_CLI_HPP
#define IMPLICITFORGE_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 usage or parse error,
// 2 numeric or preset error, 3 I/O error. Diagnostics go to `err`; data goes to
// files or to `out`.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "implicitforge/error.hpp"
#include "implicitforge/expr.hpp"
#include "implicitforge/family.hpp"
#include "implicitforge/field.hpp"
#include "implicitforge/ifld.hpp"
#include "implicitforge/marching_cubes.hpp"
#include "implicitforge/mesh.hpp"
#include "implicitforge/parametric.hpp"
#include "implicitforge/parser.hpp"
#include "implicitforge/presets.hpp"
#include "implicitforge/sensitivity.hpp"

namespace implicitforge::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2, kIo = 3 };

class UsageError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline double parse_real(std::string_view text, const std::string& what) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw UsageError(what + ": '" + std::string(text) + "' is not a finite number");
    return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

inline std::string shortest(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

/// Flags shared by every command that needs an expression over a working space.
struct SceneFlags {
    std::string expr;
    std::string file;
    std::string family;
    std::string preset;
    std::string bounds;
    std::string grid;
    std::vector<std::string> params;
    double iso = 0.0;
    bool iso_given = false;
    unsigned threads = 0;

    void add_source(CLI::App& cmd, bool with_preset) {
        auto* e = cmd.add_option("--expr", expr, "Expression text");
        auto* f = cmd.add_option("--file", file, "File containing expression text");
        auto* fam = cmd.add_option("--family", family, "Family configuration (JSON)");
        e->excludes(f)->excludes(fam);
        f->excludes(fam);
        if (with_preset) {
            auto* p = cmd.add_option("--preset", preset, "Preset name");
            p->excludes(e)->excludes(f)->excludes(fam);
        }
    }

    void add_space(CLI::App& cmd) {
        cmd.add_option("--bounds", bounds, "xmin,xmax,ymin,ymax,zmin,zmax");
        cmd.add_option("--grid", grid, "Nx,Ny,Nz");
        cmd.add_option("--param", params, "Parameter binding k=v (repeatable)")
            ->take_all()
            ->expected(1)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        cmd.add_option("--threads", threads, "Worker threads (0 = machine parallelism)");
    }

    bool has_source() const { return !expr.empty() || !file.empty() || !family.empty() || !preset.empty(); }

    /// Resolve the scene described by the flags. Preset values are defaults that
    /// --bounds, --grid, --param and --iso override.
    SceneSpec scene() const {
        SceneSpec s;
        if (!preset.empty()) {
            s = implicitforge::preset(preset);
        } else if (!expr.empty()) {
            s.name = "expr";
            s.expr = parse(expr);
        } else if (!file.empty()) {
            s.name = std::filesystem::path(file).stem().string();
            s.expr = parse(read_text_file(file));
        } else if (!family.empty()) {
            s.name = std::filesystem::path(family).stem().string();
            s.expr = build_family(family_from_json_text(read_text_file(family)));
        } else {
            throw UsageError("an expression source is required (--expr, --file, --family or --preset)");
        }
        if (!bounds.empty()) {
            auto parts = split(bounds, ',');
            if (parts.size() != 6) throw UsageError("--bounds needs 6 comma-separated numbers");
            s.grid.x_min = parse_real(parts[0], "--bounds");
            s.grid.x_max = parse_real(parts[1], "--bounds");
            s.grid.y_min = parse_real(parts[2], "--bounds");
            s.grid.y_max = parse_real(parts[3], "--bounds");
            s.grid.z_min = parse_real(parts[4], "--bounds");
            s.grid.z_max = parse_real(parts[5], "--bounds");
        } else if (preset.empty() && !s.is_parametric()) {
            throw UsageError("--bounds is required without --preset");
        }
        if (!grid.empty()) {
            auto parts = split(grid, ',');
            if (parts.size() != 3) throw UsageError("--grid needs 3 comma-separated counts");
            std::uint32_t* counts[] = {&s.grid.nx, &s.grid.ny, &s.grid.nz};
            for (int i = 0; i < 3; ++i) {
                std::string_view p = parts[i];
                std::uint32_t n = 0;
                auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), n);
                if (p.empty() || ec != std::errc() || ptr != p.data() + p.size() || n < 2)
                    throw UsageError("--grid counts must be integers >= 2");
                *counts[i] = n;
            }
        } else if (preset.empty() && !s.is_parametric()) {
            throw UsageError("--grid is required without --preset");
        }
        for (const std::string& kv : params) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("--param expects k=v, got '" + kv + "'");
            std::string key = kv.substr(0, eq);
            if (!is_identifier(key) || is_reserved_name(key)) throw UsageError("invalid parameter name '" + key + "'");
            s.params.set(key, parse_real(std::string_view(kv).substr(eq + 1), "--param " + key));
        }
        if (iso_given) s.iso = iso;
        return s;
    }
};

inline void write_mesh(const TriangleMesh& mesh, const std::string& format, const std::string& path) {
    auto out = open_output(path);
    if (format == "obj") export_obj(mesh, out);
    else if (format == "stl") export_stl(mesh, out);
    else if (format == "ply") export_ply(mesh, out);
    else throw UsageError("unknown mesh format '" + format + "'");
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

inline std::string join_names(const FreeNames& names) {
    std::string out = "variables:";
    for (Variable v : names.variables) {
        out += ' ';
        out += variable_name(v);
    }
    out += "\nparams:";
    for (const auto& p : names.params) out += ' ' + p;
    return out;
}

inline void print_preset(const SceneSpec& s, std::ostream& out) {
    out << "name: " << s.name << "\n";
    out << "description: " << s.description << "\n";
    if (s.is_parametric()) {
        const ParametricSpec& p = *s.parametric;
        out << "fx: " << format(p.fx) << "\n";
        out << "fy: " << format(p.fy) << "\n";
        out << "fz: " << format(p.fz) << "\n";
        out << "sign: " << p.sign[0] << "," << p.sign[1] << "," << p.sign[2] << "\n";
        out << "u: " << shortest(p.u_min) << "," << shortest(p.u_max) << "," << p.nu << "\n";
        out << "v: " << shortest(p.v_min) << "," << shortest(p.v_max) << "," << p.nv << "\n";
        out << "jump_threshold: " << shortest(p.jump_threshold) << "\n";
        return;
    }
    const GridSpec& g = s.grid;
    out << "expr: " << format(s.expr) << "\n";
    out << "bounds: " << shortest(g.x_min) << "," << shortest(g.x_max) << "," << shortest(g.y_min) << ","
        << shortest(g.y_max) << "," << shortest(g.z_min) << "," << shortest(g.z_max) << "\n";
    out << "grid: " << g.nx << "," << g.ny << "," << g.nz << "\n";
    out << "params:";
    for (const auto& [k, v] : s.params) out << " " << k << "=" << shortest(v);
    out << "\n";
    out << "iso: " << shortest(s.iso) << "\n";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Implicit surface generator: sample, mesh and sweep implicit functions", "implicitforge"};
    app.require_subcommand(1);

    // check
    detail::SceneFlags check_flags;
    auto* check = app.add_subcommand("check", "Parse an expression and print its canonical form and free names");
    check_flags.add_source(*check, false);

    // sample
    detail::SceneFlags sample_flags;
    std::string sample_out;
    auto* sample = app.add_subcommand("sample", "Sample an expression on a grid into an IFLD file");
    sample_flags.add_source(*sample, true);
    sample_flags.add_space(*sample);
    sample->add_option("--out", sample_out, "Output .ifld path")->required();

    // mesh
    detail::SceneFlags mesh_flags;
    std::string mesh_in, mesh_out, mesh_format = "obj";
    auto* mesh = app.add_subcommand("mesh", "Extract a triangle mesh from a field or expression");
    mesh->add_option("--in", mesh_in, "Input .ifld path");
    mesh_flags.add_source(*mesh, true);
    mesh_flags.add_space(*mesh);
    mesh->add_option("--iso", mesh_flags.iso, "Iso level (default 0)");
    mesh->add_option("--format", mesh_format, "obj, stl or ply")->check(CLI::IsMember({"obj", "stl", "ply"}));
    mesh->add_option("--out", mesh_out, "Output mesh path")->required();

    // sweep
    detail::SceneFlags sweep_flags;
    std::string sweep_param, sweep_out, sweep_meshes;
    double sweep_from = 0, sweep_to = 0, sweep_step = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter of a preset and report shape metrics");
    sweep_cmd->add_option("--preset", sweep_flags.preset, "Preset name")->required();
    sweep_cmd->add_option("--bounds", sweep_flags.bounds, "xmin,xmax,ymin,ymax,zmin,zmax");
    sweep_cmd->add_option("--grid", sweep_flags.grid, "Nx,Ny,Nz");
    sweep_cmd->add_option("--param", sweep_flags.params, "Fixed parameter binding k=v (repeatable)")
        ->take_all()
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sweep_cmd->add_option("--threads", sweep_flags.threads, "Worker threads (0 = machine parallelism)");
    sweep_cmd->add_option("--param-name", sweep_param, "Parameter to sweep")->required();
    sweep_cmd->add_option("--from", sweep_from, "First value")->required();
    sweep_cmd->add_option("--to", sweep_to, "Last value (inclusive)")->required();
    sweep_cmd->add_option("--step", sweep_step, "Step")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output report .json")->required();
    sweep_cmd->add_option("--emit-meshes", sweep_meshes, "Directory for one OBJ per row");

    // preset
    auto* preset_cmd = app.add_subcommand("preset", "List presets or print one");
    preset_cmd->require_subcommand(1);
    preset_cmd->add_subcommand("list", "List preset names");
    std::string emit_name;
    auto* emit = preset_cmd->add_subcommand("emit", "Print a preset's expression and working space");
    emit->add_option("name", emit_name, "Preset name")->required();

    std::vector<std::string> argv_copy(args.rbegin(), args.rend());
    try {
        app.parse(argv_copy);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*check) {
            if (!check_flags.has_source()) throw UsageError("check needs --expr, --file or --family");
            Expr e = !check_flags.expr.empty() ? parse(check_flags.expr)
                     : !check_flags.file.empty()
                         ? parse(detail::read_text_file(check_flags.file))
                         : build_family(family_from_json_text(detail::read_text_file(check_flags.family)));
            out << format(e) << "\n" << detail::join_names(free_names(e)) << "\n";
            return kOk;
        }
        if (*sample) {
            SceneSpec s = sample_flags.scene();
            if (s.is_parametric())
                throw InvalidArgument("preset '" + s.name + "' is parametric and has no scalar field; use mesh --preset");
            ScalarField f = sample_field(s.expr, s.grid, s.params, {sample_flags.threads});
            auto os = detail::open_output(sample_out);
            write_field(f, os);
            os.flush();
            if (!os) throw IoError("failed writing '" + sample_out + "'");
            return kOk;
        }
        if (*mesh) {
            mesh_flags.iso_given = mesh->count("--iso") > 0;
            TriangleMesh m;
            if (!mesh_in.empty()) {
                if (mesh_flags.has_source()) throw UsageError("--in excludes expression sources");
                std::ifstream in(mesh_in, std::ios::binary);
                if (!in) throw IoError("cannot open '" + mesh_in + "'");
                ScalarField f = read_field(in);
                m = marching_cubes(f, mesh_flags.iso, {mesh_flags.threads});
            } else {
                SceneSpec s = mesh_flags.scene();
                if (s.is_parametric()) {
                    m = sample_parametric_sign(*s.parametric, s.params);
                } else {
                    ScalarField f = sample_field(s.expr, s.grid, s.params, {mesh_flags.threads});
                    m = marching_cubes(f, s.iso, {mesh_flags.threads});
                }
            }
            detail::write_mesh(m, mesh_format, mesh_out);
            return kOk;
        }
        if (*sweep_cmd) {
            SceneSpec s = sweep_flags.scene();
            auto values = sweep_values(sweep_from, sweep_to, sweep_step);
            SweepOptions opts;
            opts.threads = sweep_flags.threads;
            if (!sweep_meshes.empty()) {
                std::error_code ec;
                std::filesystem::create_directories(sweep_meshes, ec);
                if (ec) throw IoError("cannot create '" + sweep_meshes + "': " + ec.message());
                opts.on_mesh = [&](double value, const TriangleMesh& m) {
                    auto name = s.name + "_" + sweep_param + "_" + detail::shortest(value) + ".obj";
                    detail::write_mesh(m, "obj", (std::filesystem::path(sweep_meshes) / name).string());
                };
            }
            SweepReport report = sweep(s, sweep_param, values, opts);
            auto os = detail::open_output(sweep_out);
            os << to_json(report).dump(2) << "\n";
            os.flush();
            if (!os) throw IoError("failed writing '" + sweep_out + "'");
            return kOk;
        }
        if (*preset_cmd) {
            if (*emit) {
                detail::print_preset(preset(emit_name), out);
            } else {
                for (const auto& name : preset_names()) out << name << "  " << preset(name).description << "\n";
            }
            return kOk;
        }
    } catch (const ParseError& e) {
        err << "error: parse error at " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    }
    return kUsage;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    return run(args, out, err);
}

}  // namespace implicitforge::cli

#endif
