#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "udgcp/cac.hpp"
#include "udgcp/dp.hpp"
#include "udgcp/generators.hpp"
#include "udgcp/io.hpp"
#include "udgcp/oracle.hpp"
#include "udgcp/sc_decomp.hpp"
#include "udgcp/solution_structure.hpp"
#include "udgcp/sparsifier.hpp"
#include "udgcp/surface_decomp.hpp"
#include "udgcp/udg.hpp"

using namespace udgcp;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kInfeasible = 1, kInputError = 2, kInternal = 3;

// Writes to the named file, or stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError(path + ": cannot write");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

UnitDiskGraph load(const std::string& path) { return build_udg(read_points_file(path)); }

int heavy(const UnitDiskGraph& g) {
    int l = 0;
    for (int v = 0; v < g.n(); ++v) l += g.degree(v) >= 3;
    return l;
}

Mode parse_mode(const std::string& s) { return s == "refined" ? Mode::Refined : Mode::Standard; }

std::string fmt(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.6g", x);
    return b;
}

// Scatter of (x, y) rows with an optional reference line y = slope * x.
std::string scatter_svg(const std::vector<std::pair<double, double>>& pts, const std::string& xl, const std::string& yl,
                        double slope) {
    double mx = 1, my = 1;
    for (auto [x, y] : pts) mx = std::max(mx, x), my = std::max(my, y);
    if (slope > 0) my = std::max(my, slope * mx);
    const double W = 480, H = 360, L = 50, B = 40;
    auto X = [&](double x) { return L + x / mx * (W - L - 10); };
    auto Y = [&](double y) { return H - B - y / my * (H - B - 10); };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - 10 << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << L << "\" y2=\"10\" stroke=\"black\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"" << H - 8 << "\" font-size=\"12\">" << xl << " (max " << fmt(mx) << ")</text>\n";
    o << "<text x=\"4\" y=\"20\" font-size=\"12\">" << yl << " (max " << fmt(my) << ")</text>\n";
    if (slope > 0)
        o << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(mx) << "\" y2=\"" << Y(slope * mx)
          << "\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n";
    for (auto [x, y] : pts) o << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
    o << "</svg>\n";
    return o.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle packing on unit disk graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "random point set as x,y CSV");
    int gn = 30, gclusters = 3;
    std::uint64_t gseed = 1;
    double gside = -1, gdensity = 2.0, gsigma = 0.5;
    std::string gdist = "uniform", gout;
    gen->add_option("--n", gn, "number of points")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gseed, "RNG seed");
    gen->add_option("--side", gside, "square side (default: from --density)");
    gen->add_option("--density", gdensity, "points per unit area when --side is not given")->check(CLI::PositiveNumber);
    gen->add_option("--dist", gdist, "uniform or clustered")->check(CLI::IsMember({"uniform", "clustered"}));
    gen->add_option("--clusters", gclusters, "cluster count")->check(CLI::PositiveNumber);
    gen->add_option("--sigma", gsigma, "cluster spread")->check(CLI::PositiveNumber);
    gen->add_option("-o,--out", gout, "output file (default stdout)");

    // solve
    auto* sol = app.add_subcommand("solve", "k vertex-disjoint cycles, or a proof there are fewer");
    std::string sin = "-", smode = "standard", sout, sstats;
    int sk = 1, sz = 3;
    long long scap = -1;
    bool snodense = false;
    sol->add_option("input", sin, "points CSV (default stdin)");
    sol->add_option("--k", sk, "number of cycles")->required()->check(CLI::NonNegativeNumber);
    sol->add_option("--mode", smode, "standard or refined")->check(CLI::IsMember({"standard", "refined"}));
    sol->add_option("--z", sz, "refined-mode biclique bound")->check(CLI::PositiveNumber);
    sol->add_option("--cap", scap, "pending vertices per cell (default 3 beta^2)");
    sol->add_flag("--no-dense", snodense, "skip the dense-instance shortcut");
    sol->add_option("-o,--out", sout, "certificate JSON file (default stdout)");
    sol->add_option("--stats", sstats, "write stats JSON (widths, table sizes, timings) here");

    // decompose
    auto* dec = app.add_subcommand("decompose", "sparsifier, surface and sc-decomposition");
    std::string din = "-", dformat = "json", dout;
    dec->add_option("input", din, "points CSV (default stdin)");
    dec->add_option("--format", dformat, "json or svg")->check(CLI::IsMember({"json", "svg"}));
    dec->add_option("-o,--out", dout, "output file (default stdout)");

    // arcs
    auto* arcs = app.add_subcommand("arcs", "K_{z,z}-free circular pairings");
    int am = 3, az = 3;
    bool acount = false, afilter = false;
    arcs->add_option("--m", am, "number of arcs")->required()->check(CLI::Range(0, 9));
    arcs->add_option("--z", az, "biclique bound")->check(CLI::PositiveNumber);
    arcs->add_flag("--count-only", acount, "print the count only");
    arcs->add_flag("--filter", afilter, "use the filter over all matchings");

    // oracle
    auto* ora = app.add_subcommand("oracle", "exhaustive maximum packing (n <= 16)");
    std::string oin = "-";
    bool oall = false;
    ora->add_option("input", oin, "points CSV (default stdin)");
    ora->add_flag("--all", oall, "list every optimal packing");

    // verify
    auto* ver = app.add_subcommand("verify", "check a cycle list against the graph");
    std::string vin, vsol;
    int vk = -1;
    ver->add_option("input", vin, "points CSV")->required();
    ver->add_option("--solution", vsol, "certificate JSON or array of cycles")->required();
    ver->add_option("--k", vk, "also require at least k cycles");

    // bench
    auto* ben = app.add_subcommand("bench", "regression suites as CSV");
    std::string bsuite = "width", bplot, bout;
    int bcount = 60, bmaxn = 1000;
    std::uint64_t bseed = 1;
    ben->add_option("--suite", bsuite, "width or runtime")->check(CLI::IsMember({"width", "runtime"}));
    ben->add_option("--count", bcount, "instances")->check(CLI::PositiveNumber);
    ben->add_option("--seed", bseed, "base seed");
    ben->add_option("--max-n", bmaxn, "largest instance")->check(CLI::PositiveNumber);
    ben->add_option("-o,--out", bout, "CSV file (default stdout)");
    ben->add_option("--plot", bplot, "also write an SVG plot here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*gen) {
            double side = gside > 0 ? gside : std::sqrt(std::max(gn, 1) / gdensity);
            auto pts = gdist == "clustered" ? clustered_points(gn, side, gclusters, gsigma, gseed)
                                            : uniform_points(gn, side, gseed);
            std::ostringstream o;
            write_points_csv(o, pts);
            emit(gout, o.str());
            return kOk;
        }
        if (*sol) {
            auto g = load(sin);
            SolveOptions so;
            so.mode = parse_mode(smode);
            so.z = sz;
            so.cap = scap;
            so.dense_shortcut = !snodense;
            auto r = solve(g, sk, so);
            emit(sout, certificate_json(r, sk));
            if (!sstats.empty()) emit(sstats, stats_json(r));
            return r.feasible ? kOk : kInfeasible;
        }
        if (*dec) {
            auto g = load(din);
            auto p = build_pipeline(g);
            if (dformat == "svg") {
                emit(dout, sc_svg(p));
                return kOk;
            }
            auto a = check_sc(p.sc, g, p.map);
            auto s = check_surface(p.sd);
            json j;
            j["n"] = g.n();
            j["m"] = g.m();
            j["heavy_vertices"] = heavy(g);
            j["width"] = p.sc.width;
            j["audit"] = {{"surface_ok", s.ok()}, {"sc_ok", a.ok()}, {"c4_spread", a.c4_spread}};
            j["sparsifier"] = json::parse(sparsifier_json(p.h, p.map));
            j["surface"] = json::parse(surface_json(p.sd));
            j["sc"] = json::parse(sc_json(p.sc));
            emit(dout, j.dump(2));
            return kOk;
        }
        if (*arcs) {
            auto ps = afilter ? enumerate_kzz_free_filter(am, az) : enumerate_kzz_free(am, az);
            if (acount) {
                emit("", std::to_string(ps.size()));
                return kOk;
            }
            json j = json::array();
            for (const auto& p : ps) {
                json a = json::array();
                for (auto [x, y] : p.arcs) a.push_back({x, y});
                j.push_back(a);
            }
            emit("", json{{"m", am}, {"z", az}, {"count", ps.size()}, {"pairings", j}}.dump(2));
            return kOk;
        }
        if (*ora) {
            auto g = load(oin);
            auto r = max_cycle_packing(g.adj);
            json j{{"n", g.n()}, {"m", g.m()}, {"max_cycles", r.value}, {"cycles", r.cycles}};
            if (oall) j["all_optimal"] = all_optimal_packings(g.adj);
            emit("", j.dump(2));
            return kOk;
        }
        if (*ver) {
            auto g = load(vin);
            std::ifstream f(vsol);
            if (!f) throw InputError(vsol + ": cannot open");
            auto cycles = read_cycles_json(f, vsol);
            for (const auto& c : cycles)
                for (int v : c)
                    if (v < 0 || v >= g.n())
                        throw InputError(vsol + ": vertex " + std::to_string(v) + " out of range");
            bool ok = verify_solution(g.adj, cycles) && (vk < 0 || static_cast<int>(cycles.size()) >= vk);
            emit("", json{{"valid", ok}, {"cycles", cycles.size()}}.dump(2));
            return ok ? kOk : kInfeasible;
        }
        if (*ben) {
            int threads = thread_count();
            std::ostringstream csv;
            std::vector<std::pair<double, double>> plot;
            if (bsuite == "width") {
                struct Row {
                    int n = 0, ell = 0;
                    double width = 0;
                };
                std::vector<Row> rows(bcount);
                parallel_for(bcount, threads, [&](int i) {
                    int n = 10 + static_cast<int>((static_cast<long long>(i) * 7919) % std::max(1, bmaxn - 9));
                    double side = std::sqrt(n / (0.8 + (i % 7) * 0.5));
                    auto pts = i % 5 == 4 ? clustered_points(n, side, 1 + n / 60, 1.0 + side / 8, bseed + i)
                                          : uniform_points(n, side, bseed + i);
                    auto g = build_udg(pts);
                    rows[i] = {n, heavy(g), g.m() ? build_pipeline(g).sc.width : 0.0};
                });
                csv << "n,l,width,K\n";
                double K = 0;
                for (const auto& r : rows) {
                    double k = r.ell ? r.width / std::sqrt(r.ell) : 0;
                    K = std::max(K, k);
                    csv << r.n << ',' << r.ell << ',' << fmt(r.width) << ',' << fmt(k) << '\n';
                    plot.push_back({std::sqrt(r.ell), r.width});
                }
                if (!bplot.empty()) emit(bplot, scatter_svg(plot, "sqrt(l)", "width", K));
            } else {
                struct Row {
                    int n = 0, k = 0, value = 0;
                    bool feasible = false, dense = false;
                    double seconds = 0;
                };
                std::vector<Row> rows(bcount);
                parallel_for(bcount, threads, [&](int i) {
                    int n = std::min(bmaxn, 8 + i % 10);
                    auto g = build_udg(uniform_points(n, std::sqrt(n / 3.0), bseed + i));
                    int k = 1 + i % 4;
                    auto t0 = std::chrono::steady_clock::now();
                    auto r = solve(g, k);
                    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                    rows[i] = {n, k, r.value, r.feasible, r.stats.dense, s};
                });
                csv << "n,k,feasible,max_cycles,dense,seconds\n";
                for (const auto& r : rows) {
                    csv << r.n << ',' << r.k << ',' << r.feasible << ',' << r.value << ',' << r.dense << ','
                        << fmt(r.seconds) << '\n';
                    plot.push_back({static_cast<double>(r.k), r.seconds});
                }
                if (!bplot.empty()) emit(bplot, scatter_svg(plot, "k", "seconds", 0));
            }
            emit(bout, csv.str());
            return kOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}
