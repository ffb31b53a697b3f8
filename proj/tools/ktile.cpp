// Command-line front end: exact k-tiling toolkit for rational polytopes.
// Exit codes: 0 pass, 1 mathematical fail/refutation, 2 input error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ktile/boundary.hpp"
#include "ktile/fourier.hpp"
#include "ktile/io.hpp"
#include "ktile/solid_angle.hpp"
#include "ktile/symmetry.hpp"
#include "ktile/tiling.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 42;

std::string fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ktile::ParseError("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ktile::json make_manifest(const std::string& command, const std::vector<std::string>& inputs,
                          std::uint64_t seed, double elapsedMs) {
    ktile::json m;
    m["command"] = command;
    m["inputs"] = ktile::json::object();
    for (const auto& path : inputs) m["inputs"][path] = fnv1a_file(path);
    m["seed"] = seed;
    m["version"] = kVersion;
    m["timingMs"] = elapsedMs;
    return m;
}

ktile::Vec parse_vector(const std::string& s, size_t dim) {
    ktile::Vec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(ktile::parse_fraction(tok));
    if (v.size() != dim)
        throw ktile::ParseError("vector '" + s + "' must have " + std::to_string(dim) +
                                " coordinates");
    return v;
}

ktile::Frame parse_frame(const std::string& s, size_t dim) {
    ktile::Mat dirs;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ';')) dirs.push_back(parse_vector(tok, dim));
    return ktile::Frame(dirs);
}

ktile::TranslationMultiset load_lambda(const std::string& path, size_t dim) {
    if (path.empty()) return ktile::TranslationMultiset::integerLattice(dim);
    return ktile::multiset_from_json(ktile::load_json_file(path));
}

void write_svg(const std::string& path, const ktile::Polytope& P,
               const ktile::TranslationMultiset& lambda) {
    // Outlines of P + lambda over a window around the fundamental domain.
    auto [lo, hi] = P.boundingBox(ktile::Vec(2, 0));
    double margin = ktile::to_double(hi[0] - lo[0]) + 1.0;
    double x0 = -margin, x1 = 2 + margin, y0 = -margin, y1 = 2 + margin;
    double scalePx = 60.0;
    std::ofstream svg(path);
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << (x1 - x0) * scalePx
        << "' height='" << (y1 - y0) * scalePx << "'>\n";
    ktile::Vec wlo = {ktile::Rat(-4), ktile::Rat(-4)};
    ktile::Vec whi = {ktile::Rat(6), ktile::Rat(6)};
    for (const auto& comp : lambda.components) {
        ktile::for_each_lattice_point_in_box(comp, wlo, whi, [&](const ktile::Vec& lam) {
            svg << "<polygon points='";
            // Walk the polygon boundary via edge adjacency.
            std::vector<size_t> order;
            size_t cur = 0, prev = ktile::Polytope::npos;
            do {
                order.push_back(cur);
                for (size_t fi = 0; fi < P.faces().size(); ++fi) {
                    if (P.faces()[fi].dim != 1) continue;
                    const auto& e = P.faces()[fi].vertexIndices;
                    size_t other = e[0] == cur ? e[1] : e[1] == cur ? e[0] : ktile::Polytope::npos;
                    if (other != ktile::Polytope::npos && other != prev) {
                        prev = cur;
                        cur = other;
                        break;
                    }
                }
            } while (cur != 0 && order.size() <= P.vertices().size());
            for (size_t vi : order) {
                double px = (ktile::to_double(P.vertices()[vi][0] + lam[0]) - x0) * scalePx;
                double py = (y1 - ktile::to_double(P.vertices()[vi][1] + lam[1])) * scalePx;
                svg << px << "," << py << " ";
            }
            svg << "' fill='none' stroke='black' stroke-width='1'/>\n";
        });
    }
    svg << "</svg>\n";
}

void emit(const ktile::json& j) { std::cout << j.dump(2) << std::endl; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-tiling toolkit for rational polytopes"};
    app.require_subcommand(1);

    std::string polyPath, lambdaPath, framesSpec, vSpec = "0,0", xiSpec, svgPath, emitDir;
    unsigned trials = 100;
    std::uint64_t seed = kDefaultSeed;
    bool exact2d = false, oracle = false;
    double tol = 1e-8;

    auto* symCmd = app.add_subcommand("check-symmetry", "Minkowski necessary conditions");
    symCmd->add_option("polytope", polyPath)->required();

    auto* kCmd = app.add_subcommand("compute-k", "N and k for the rational lattice (1/N)Z^d");
    kCmd->add_option("polytope", polyPath)->required();
    kCmd->add_option("--seed", seed);

    auto* verifyCmd = app.add_subcommand("verify", "k-tiling verification");
    verifyCmd->add_option("polytope", polyPath)->required();
    verifyCmd->add_option("--lambda", lambdaPath);
    verifyCmd->add_option("--trials", trials);
    verifyCmd->add_option("--seed", seed);
    verifyCmd->add_flag("--exact-2d", exact2d);
    verifyCmd->add_option("--svg", svgPath);

    auto* boundaryCmd = app.add_subcommand("boundary-check", "discrete boundary identities");
    boundaryCmd->add_option("polytope", polyPath)->required();
    boundaryCmd->add_option("--lambda", lambdaPath);
    boundaryCmd->add_option("--frame", framesSpec)->required();
    boundaryCmd->add_option("--trials", trials);
    boundaryCmd->add_option("--seed", seed);

    auto* angleCmd = app.add_subcommand("angle-sum", "solid-angle sum over Lambda");
    angleCmd->add_option("polytope", polyPath)->required();
    angleCmd->add_option("--lambda", lambdaPath);
    angleCmd->add_option("--v", vSpec);

    auto* fourierCmd = app.add_subcommand("fourier", "Fourier transform of the indicator");
    fourierCmd->add_option("polytope", polyPath)->required();
    fourierCmd->add_option("--xi", xiSpec)->required();
    fourierCmd->add_flag("--oracle", oracle);
    fourierCmd->add_option("--tol", tol);

    auto* fixturesCmd = app.add_subcommand("fixtures", "bundled fixture corpus");
    fixturesCmd->add_option("--emit", emitDir);

    CLI11_PARSE(app, argc, argv);
    auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         started)
            .count();
    };

    try {
        if (fixturesCmd->parsed()) {
            ktile::json out;
            out["fixtures"] = ktile::json::array();
            for (const auto& f : ktile::builtin_fixtures())
                out["fixtures"].push_back(ktile::fixture_to_json(f));
            if (!emitDir.empty()) {
                std::filesystem::create_directories(emitDir);
                for (const auto& f : ktile::builtin_fixtures()) {
                    std::ofstream of(emitDir + "/" + f.name + ".json");
                    of << ktile::fixture_to_json(f)["polytope"].dump(2) << "\n";
                }
                for (size_t d = 2; d <= 4; ++d) {
                    std::ofstream of(emitDir + "/z" + std::to_string(d) + ".json");
                    of << ktile::multiset_to_json(ktile::TranslationMultiset::integerLattice(d))
                              .dump(2)
                       << "\n";
                }
                out["emitted"] = emitDir;
            }
            emit(out);
            return 0;
        }

        ktile::Polytope P = ktile::polytope_from_json(ktile::load_json_file(polyPath));
        std::vector<std::string> inputs = {polyPath};
        if (!lambdaPath.empty()) inputs.push_back(lambdaPath);

        if (symCmd->parsed()) {
            auto verdict = ktile::minkowski_verdict(P);
            ktile::json out;
            out["verdict"] = ktile::symmetry_verdict_to_json(verdict);
            out["manifest"] = make_manifest("check-symmetry", inputs, 0, elapsed());
            emit(out);
            return verdict.overall == ktile::SymmetryOutcome::Pass ? 0 : 1;
        }

        if (kCmd->parsed()) {
            ktile::json out;
            try {
                auto result = ktile::compute_k_rational(P, seed);
                out["N"] = result.N.str();
                out["k"] = result.k;
            } catch (const ktile::SymmetryPreconditionFailed& e) {
                out["error"] = e.what();
                out["manifest"] = make_manifest("compute-k", inputs, seed, elapsed());
                emit(out);
                return 1;
            }
            out["manifest"] = make_manifest("compute-k", inputs, seed, elapsed());
            emit(out);
            return 0;
        }

        if (verifyCmd->parsed()) {
            auto lambda = load_lambda(lambdaPath, P.dim());
            ktile::KTilingReport report =
                exact2d ? ktile::verify_k_tiling_exact_2d(P, lambda)
                        : ktile::verify_k_tiling_sampled(P, lambda, trials, seed);
            if (!svgPath.empty() && P.dim() == 2) write_svg(svgPath, P, lambda);
            ktile::json out;
            out["report"] = ktile::tiling_report_to_json(report);
            out["manifest"] = make_manifest("verify", inputs, seed, elapsed());
            emit(out);
            return report.kind == ktile::KTilingReport::Kind::Refuted ? 1 : 0;
        }

        if (boundaryCmd->parsed()) {
            auto lambda = load_lambda(lambdaPath, P.dim());
            ktile::Frame frame = parse_frame(framesSpec, P.dim());
            auto sum = ktile::apply_frame(P, frame);
            ktile::json out;
            out["frame"] = ktile::json::array();
            for (const auto& n : frame.directions) out["frame"].push_back(ktile::vector_to_json(n));
            out["signedVolume"] = ktile::fraction_string(ktile::signed_volume(sum));
            out["terms"] = ktile::json::array();
            for (const auto& [faceIndex, coeff] : sum.terms) {
                ktile::json jt;
                jt["coefficient"] = coeff;
                jt["faceDim"] = P.faces()[faceIndex].dim;
                jt["faceVertices"] = ktile::json::array();
                for (size_t vi : P.faces()[faceIndex].vertexIndices)
                    jt["faceVertices"].push_back(ktile::vector_to_json(P.vertices()[vi]));
                out["terms"].push_back(jt);
            }
            out["samples"] = ktile::json::array();
            std::mt19937_64 rng(seed);
            bool allZero = true;
            for (unsigned t = 0; t < trials; ++t) {
                for (unsigned attempt = 0;; ++attempt) {
                    ktile::Vec v = ktile::sample_general_position(P, lambda, rng);
                    try {
                        long long s = ktile::discrete_lambda_sum(P, frame, v, lambda);
                        ktile::json js;
                        js["v"] = ktile::vector_to_json(v);
                        js["sum"] = s;
                        out["samples"].push_back(js);
                        if (s != 0) allZero = false;
                        break;
                    } catch (const ktile::NotGeneralPosition&) {
                        if (attempt > 64) throw;
                    }
                }
            }
            out["manifest"] = make_manifest("boundary-check", inputs, seed, elapsed());
            emit(out);
            return allZero ? 0 : 1;
        }

        if (angleCmd->parsed()) {
            auto lambda = load_lambda(lambdaPath, P.dim());
            ktile::Vec v = parse_vector(vSpec, P.dim());
            auto sum = ktile::solid_angle_sum(P, lambda, v);
            ktile::json out;
            out["sum"] = sum.sum;
            out["errorBound"] = sum.errorBound;
            out["contributions"] = sum.contributors;
            out["manifest"] = make_manifest("angle-sum", inputs, 0, elapsed());
            emit(out);
            return 0;
        }

        if (fourierCmd->parsed()) {
            ktile::Vec xi = parse_vector(xiSpec, P.dim());
            auto value = ktile::hat_indicator(P, xi);
            ktile::json out;
            out["re"] = value.value.real();
            out["im"] = value.value.imag();
            out["errorBound"] = value.errorBound;
            if (oracle) {
                auto q = ktile::hat_quadrature(P, xi, tol);
                ktile::json jo;
                jo["re"] = q.value.real();
                jo["im"] = q.value.imag();
                jo["errorBound"] = q.errorBound;
                out["oracle"] = jo;
            }
            out["manifest"] = make_manifest("fourier", inputs, 0, elapsed());
            emit(out);
            return 0;
        }
    } catch (const ktile::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ktile::DimensionUnsupported& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ktile::DegenerateInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
