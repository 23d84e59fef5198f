// scribe: command-line front end for the scribability toolkit.
//
// Exit codes: 0 verdict true / success, 1 verdict false or failed
// construction, 2 indeterminate, 3 usage or I/O error.

#include "scribe/caps.hpp"
#include "scribe/combinatorics.hpp"
#include "scribe/constructions.hpp"
#include "scribe/hyperbolic.hpp"
#include "scribe/io.hpp"
#include "scribe/scribability.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

using namespace scribe;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitUsage = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

double env_tol() {
    if (const char* s = std::getenv("SCRIBE_TOL")) return std::stod(s);
    return kDefaultTol;
}

std::uint64_t env_seed() {
    if (const char* s = std::getenv("SCRIBE_SEED")) return std::stoull(s);
    return 1;
}

// path3, star4, random10
StackingTree parse_tree(const std::string& spec, int d, std::uint64_t seed) {
    auto number = [&](std::size_t prefix) {
        try {
            return std::stoi(spec.substr(prefix));
        } catch (const std::exception&) {
            throw UsageError("bad tree spec " + spec);
        }
    };
    if (spec.rfind("path", 0) == 0) return StackingTree::path(d, number(4));
    if (spec.rfind("star", 0) == 0) return StackingTree::star(d, number(4));
    if (spec.rfind("random", 0) == 0) return StackingTree::random(d, number(6), seed);
    throw UsageError("tree spec must be pathN, starN or randomN");
}

Mask parse_face(const std::string& s) {
    std::vector<int> idx;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) idx.push_back(std::stoi(tok));
    return to_mask(idx);
}

Json masks_json(const std::vector<Mask>& ms) {
    Json a = Json::array();
    for (Mask m : ms) a.push_back(indices(m));
    return a;
}

Json tree_json(const StackingTree& t) {
    Json j;
    j["d"] = t.d;
    j["adjacency"] = t.adj;
    j["max_degree"] = t.max_degree();
    return j;
}

struct Common {
    double tol = env_tol();
    std::uint64_t seed = env_seed();
    std::string out = "-";
    bool trust = false;
};

void add_common(CLI::App* app, Common& c, bool with_out = true) {
    app->add_option("--tol", c.tol, "Numerical tolerance (default $SCRIBE_TOL or 1e-9)");
    app->add_option("--seed", c.seed, "Random seed (default $SCRIBE_SEED or 1)");
    if (with_out) app->add_option("-o,--output", c.out, "Output file, - for stdout");
}

Polytope load_polytope(const std::string& path, const Common& c) {
    return polytope_from_json(read_json(path), c.trust, c.tol);
}

Json meta(const std::string& command, const Common& c) { return {{"command", command}, {"seed", c.seed}, {"tol", c.tol}}; }

int verdict_exit(Verdict v) {
    switch (v) {
    case Verdict::True: return kExitTrue;
    case Verdict::False: return kExitFalse;
    default: return kExitIndeterminate;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scribability of polytopes: builders, classifiers and constructions"};
    app.require_subcommand(1);
    Common c;
    int exit_code = kExitTrue;
    std::function<void()> action;

    // build -------------------------------------------------------------
    auto* build = app.add_subcommand("build", "Build a polytope");
    build->require_subcommand(1);
    int dim = 3, n = 6, k = 1, i_arg = 0, j_arg = 0;
    std::string curve = "moment", tree_spec = "path3", mode_s = "strong", file = "-", format = "json";
    double eps = 1e-3;
    bool exact = false;

    auto* b_cyc = build->add_subcommand("cyclic", "Cyclic polytope on a curve");
    b_cyc->add_option("--dim", dim)->required();
    b_cyc->add_option("--n", n)->required();
    b_cyc->add_option("--curve", curve)->check(CLI::IsMember({"moment", "trigonometric", "clustered"}));
    b_cyc->add_option("--eps", eps, "Cluster half-width");
    b_cyc->add_flag("--exact", exact, "Rational moment-curve coordinates");
    add_common(b_cyc, c);
    b_cyc->callback([&] {
        action = [&] {
            Polytope P;
            if (exact) {
                std::vector<long> params(n);
                for (int t = 0; t < n; ++t) params[t] = t;
                P = hull_exact(moment_points_exact(dim, params));
            } else {
                CurveOptions opt;
                opt.kind = curve == "moment" ? Curve::Moment : curve == "trigonometric" ? Curve::Trigonometric : Curve::Clustered;
                opt.eps = eps;
                P = cyclic_realization(dim, n, opt, c.tol);
            }
            write_json(c.out, polytope_to_json(P, meta("build cyclic", c)));
        };
    });

    auto* b_stk = build->add_subcommand("stacked", "Stacked polytope of a tree");
    b_stk->add_option("--dim", dim)->required();
    b_stk->add_option("--tree", tree_spec, "pathN, starN or randomN");
    add_common(b_stk, c);
    b_stk->callback([&] {
        action = [&] {
            StackingTree t = parse_tree(tree_spec, dim, c.seed);
            Polytope P = ridge_scribed_stacked(t, c.tol);
            Json m = meta("build stacked", c);
            m["tree"] = tree_json(t);
            write_json(c.out, polytope_to_json(P, m));
        };
    });

    auto* b_rnd = build->add_subcommand("random", "Hull of Gaussian points");
    b_rnd->add_option("--dim", dim)->required();
    b_rnd->add_option("--n", n)->required();
    add_common(b_rnd, c);
    b_rnd->callback([&] {
        action = [&] {
            std::mt19937_64 rng(c.seed);
            std::normal_distribution<double> g;
            std::vector<Vec> pts;
            for (int t = 0; t < n; ++t) {
                Vec v(dim);
                for (int a = 0; a < dim; ++a) v(a) = g(rng);
                pts.push_back(v);
            }
            write_json(c.out, polytope_to_json(hull(pts, Form::Euclidean, c.tol), meta("build random", c)));
        };
    });

    // fixture -----------------------------------------------------------
    auto* fix = app.add_subcommand("fixture", "Named example polytope");
    std::string fixture_name;
    fix->add_option("name", fixture_name)->required()->check(CLI::IsMember(fixture_names()));
    add_common(fix, c);
    fix->callback([&] {
        action = [&] { write_json(c.out, polytope_to_json(named_fixture(fixture_name), meta("fixture " + fixture_name, c))); };
    });

    // check -------------------------------------------------------------
    auto* chk = app.add_subcommand("check", "Decide (i, j)-scribedness; exit 0/1/2");
    chk->add_option("--i", i_arg)->required();
    chk->add_option("--j", j_arg)->required();
    chk->add_option("--mode", mode_s)->check(CLI::IsMember({"strong", "weak"}));
    chk->add_flag("--trust-lattice", c.trust, "Skip re-validating a stored lattice");
    chk->add_option("file", file, "Polytope JSON, - for stdin");
    add_common(chk, c);
    chk->callback([&] {
        action = [&] {
            Polytope P = load_polytope(file, c);
            if (i_arg < 0 || j_arg < i_arg || j_arg > P.dim - 1) throw UsageError("need 0 <= i <= j <= d-1");
            ScribedReport r = scribed_report(P, i_arg, j_arg, mode_s == "strong" ? Mode::Strong : Mode::Weak, c.tol);
            write_json(c.out, report_to_json(r, c.seed));
            exit_code = verdict_exit(r.verdict);
        };
    });

    // construct ---------------------------------------------------------
    auto* con = app.add_subcommand("construct", "Run a scribing construction");
    con->require_subcommand(1);
    int rounds = 2, max_vertices = 30;
    std::vector<double> ellipsoid;
    std::string svg_out, file_q, facet_p, facet_q;

    auto* c_ins = con->add_subcommand("inscribe-truncated", "Truncated polytope inscribed in a sphere or ellipsoid");
    c_ins->add_option("--dim", dim)->required();
    c_ins->add_option("--rounds", rounds);
    c_ins->add_option("--max-vertices", max_vertices);
    c_ins->add_option("--tree", tree_spec, "Use the program polar to this stacking tree instead");
    c_ins->add_option("--ellipsoid", ellipsoid, "Diagonal of A for x^T A x = 1")->delimiter(',');
    add_common(c_ins, c);
    c_ins->callback([&] {
        action = [&] {
            TruncationProgram prog = c_ins->count("--tree") ? program_from_tree(parse_tree(tree_spec, dim, c.seed))
                                                             : random_truncation_program(dim, rounds, max_vertices, c.seed);
            Body body = Body::sphere(dim);
            if (!ellipsoid.empty()) {
                if (static_cast<int>(ellipsoid.size()) != dim) throw UsageError("--ellipsoid needs d entries");
                body.A = Vec::Map(ellipsoid.data(), dim).asDiagonal();
            }
            InscribedTruncation res = inscribe_truncated(prog, body, c.tol);
            Json m = meta("construct inscribe-truncated", c);
            Json labels = Json::array();
            for (const auto& l : res.labels) labels.push_back(to_string(l));
            m["labels"] = labels;
            m["pull_fraction"] = res.pull_fraction;
            write_json(c.out, polytope_to_json(res.polytope, m));
        };
    });

    auto* c_rs = con->add_subcommand("ridge-stacked", "Stacked polytope with every ridge tangent");
    c_rs->add_option("--dim", dim)->required();
    c_rs->add_option("--tree", tree_spec, "pathN, starN or randomN")->required();
    add_common(c_rs, c);
    c_rs->callback([&] {
        action = [&] {
            StackingTree t = parse_tree(tree_spec, dim, c.seed);
            Json m = meta("construct ridge-stacked", c);
            m["tree"] = tree_json(t);
            write_json(c.out, polytope_to_json(ridge_scribed_stacked(t, c.tol), m));
        };
    });

    auto* c_ms = con->add_subcommand("moebius-sum", "Connected sum of two ridge-scribed polytopes");
    c_ms->add_option("file_p", file)->required();
    c_ms->add_option("file_q", file_q)->required();
    c_ms->add_option("--facet-p", facet_p, "Comma-separated vertex indices (default: first simplex facet)");
    c_ms->add_option("--facet-q", facet_q);
    add_common(c_ms, c);
    c_ms->callback([&] {
        action = [&] {
            Polytope P = load_polytope(file, c), Q = load_polytope(file_q, c);
            auto first_simplex = [](const Polytope& X) {
                for (Mask f : X.lattice.facets())
                    if (popcount(f) == X.dim) return f;
                throw UsageError("polytope has no simplex facet");
            };
            Mask fp = facet_p.empty() ? first_simplex(P) : parse_face(facet_p);
            Mask fq = facet_q.empty() ? first_simplex(Q) : parse_face(facet_q);
            write_json(c.out, polytope_to_json(moebius_connected_sum(P, fp, Q, fq, c.tol), meta("construct moebius-sum", c)));
        };
    });

    auto* c_bp = con->add_subcommand("ball-packing", "Ball packing with the skeleton of a truncated polytope");
    c_bp->add_option("--dim", dim)->required();
    c_bp->add_option("--tree", tree_spec, "Stacking tree of the polar (default: random program)");
    c_bp->add_option("--rounds", rounds);
    c_bp->add_option("--max-vertices", max_vertices);
    c_bp->add_option("--svg", svg_out, "Also write an SVG (2-d packings)");
    add_common(c_bp, c);
    c_bp->callback([&] {
        action = [&] {
            TruncationProgram prog = c_bp->count("--tree") ? program_from_tree(parse_tree(tree_spec, dim, c.seed))
                                                            : random_truncation_program(dim, rounds, max_vertices, c.seed);
            BallPacking bp = ball_packing_truncated(prog, c.tol);
            Json j = packing_to_json(bp);
            j["metadata"] = meta("construct ball-packing", c);
            write_json(c.out, j);
            if (!svg_out.empty()) write_text(svg_out, packing_svg(bp));
        };
    });

    auto* c_oc = con->add_subcommand("odd-cyclic", "Strongly (1, d-1)-scribed cyclic polytope, d odd");
    c_oc->add_option("--dim", dim)->required();
    c_oc->add_option("--n", n)->required();
    add_common(c_oc, c);
    c_oc->callback([&] {
        action = [&] {
            OddCyclic oc = odd_cyclic_scribed(dim, n, c.tol);
            Json m = meta("construct odd-cyclic", c);
            m["h"] = oc.h;
            m["v_plus"] = oc.v_plus;
            m["v_minus"] = oc.v_minus;
            m["cyclic_label"] = oc.relabel;
            write_json(c.out, polytope_to_json(oc.polytope, m));
        };
    });

    auto* c_wij = con->add_subcommand("weak-ij", "Affine image that is weakly (i, i+1)-scribed");
    c_wij->add_option("--i", i_arg)->required();
    c_wij->add_option("file", file)->required();
    add_common(c_wij, c);
    c_wij->callback([&] {
        action = [&] {
            Polytope P = load_polytope(file, c);
            write_json(c.out, polytope_to_json(weak_ij_realization(P, i_arg, c.seed, c.tol), meta("construct weak-ij", c)));
        };
    });

    // analyze -----------------------------------------------------------
    auto* ana = app.add_subcommand("analyze", "Combinatorial and metric analyses");
    ana->require_subcommand(1);
    int threads = 0, max_size = 3;

    auto* a_ks = ana->add_subcommand("ksets", "All k-sets of the vertices");
    a_ks->add_option("--k", k)->required();
    a_ks->add_option("--threads", threads);
    a_ks->add_option("file", file);
    add_common(a_ks, c);
    a_ks->callback([&] {
        action = [&] {
            Polytope P = to_euclidean_if_possible(load_polytope(file, c), c.tol);
            if (P.form != Form::Euclidean) throw UsageError("k-sets need a Euclidean realization");
            Json out = Json::array();
            for (const KSet& s : k_sets(P, k, c.tol, threads)) {
                bool has_facet = false;
                for (Mask f : P.lattice.facets()) has_facet = has_facet || subset_of(f, s.set);
                out.push_back({{"set", indices(s.set)}, {"margin", s.margin}, {"contains_facet", has_facet}});
            }
            write_json(c.out, {{"k", k}, {"ksets", out}});
        };
    });

    auto* a_mf = ana->add_subcommand("missing-faces", "Minimal non-faces up to a size");
    a_mf->add_option("--max-size", max_size);
    a_mf->add_option("file", file);
    add_common(a_mf, c);
    a_mf->callback([&] {
        action = [&] { write_json(c.out, {{"missing_faces", masks_json(missing_faces(load_polytope(file, c).lattice, max_size))}}); };
    });

    auto* a_nb = ana->add_subcommand("neighborliness", "Largest k with a complete k-skeleton");
    a_nb->add_option("file", file);
    add_common(a_nb, c);
    a_nb->callback([&] {
        action = [&] { write_json(c.out, {{"neighborliness", neighborliness(load_polytope(file, c).lattice)}}); };
    });

    auto* a_dt = ana->add_subcommand("dual-tree", "Dual tree of a stacked polytope");
    a_dt->add_option("file", file);
    add_common(a_dt, c);
    a_dt->callback([&] {
        action = [&] {
            StackedAnalysis sa = stacked_analysis(load_polytope(file, c).lattice);
            write_json(c.out, {{"tree", tree_json(sa.tree)},
                               {"simplices", masks_json(sa.simplices)},
                               {"max_degree", sa.max_degree},
                               {"inscribable", sa.inscribable}});
        };
    });

    auto* a_dh = ana->add_subcommand("dihedral", "Klein-model dihedral angle of every ridge");
    a_dh->add_option("file", file);
    add_common(a_dh, c);
    a_dh->callback([&] {
        action = [&] {
            Polytope P = load_polytope(file, c);
            Json out = Json::array();
            for (Mask r : P.lattice.faces(P.dim - 2)) {
                DihedralAngle a = dihedral_angle(P, r, c.tol);
                Json e{{"ridge", indices(r)}, {"defined", a.defined}, {"product", a.product}};
                if (a.defined) e["angle"] = a.angle;
                if (a.distance > 0) e["distance"] = a.distance;
                if (!a.note.empty()) e["note"] = a.note;
                out.push_back(e);
            }
            write_json(c.out, {{"ridges", out}});
        };
    });

    auto* a_au = ana->add_subcommand("audit-stack01", "Angle audit of the twice-stacked 4-simplex");
    a_au->add_option("file", file);
    add_common(a_au, c);
    a_au->callback([&] {
        action = [&] {
            AngleAudit a = stack01_audit(load_polytope(file, c), c.tol);
            write_json(c.out, {{"preconditions_hold", a.preconditions_hold},
                               {"violations", masks_json(a.violations)},
                               {"ridges", masks_json(a.ridges)},
                               {"totals", a.totals},
                               {"flagged", masks_json(a.flagged)},
                               {"undefined", masks_json(a.undefined)},
                               {"total", a.total},
                               {"interior_simplices", a.interior_simplices},
                               {"consistent", a.consistent()}});
            exit_code = a.consistent() ? kExitTrue : kExitFalse;
        };
    });

    auto* a_th = ana->add_subcommand("thresholds", "Vertex-count thresholds from the separator bound");
    a_th->add_option("--dim", dim)->required();
    a_th->add_option("--k", k, "Neighborliness for the neighborly bound");
    add_common(a_th, c);
    a_th->callback([&] {
        action = [&] {
            Thresholds t = thresholds(dim);
            Json j{{"d", t.d}, {"c_d", t.c_d}, {"even_bound", t.even_bound}, {"odd_bound", t.odd_bound}};
            if (a_th->count("--k")) j["neighborly_bound"] = neighborly_bound(dim, k);
            write_json(c.out, j);
        };
    });

    auto* a_kp = ana->add_subcommand("kply", "k-ply test of the vertex caps, checked against k-sets");
    a_kp->add_option("--k", k)->required();
    a_kp->add_option("file", file);
    add_common(a_kp, c);
    a_kp->callback([&] {
        action = [&] {
            Polytope P = to_euclidean_if_possible(load_polytope(file, c), c.tol);
            if (P.form != Form::Euclidean) throw UsageError("caps need a Euclidean realization");
            std::vector<SphericalCap> caps;
            Json caps_j = Json::array();
            for (const Vec& v : P.vertices) {
                caps.push_back(cap_from_point(v, c.tol));
                caps_j.push_back({{"center", std::vector<double>(caps.back().center.data(), caps.back().center.data() + v.size())},
                                  {"radius", caps.back().radius}});
            }
            KPlyEquivalence eq = kply_equivalence_check(P.vertices, k, c.tol);
            KPlyResult kr = is_k_ply(caps, k, c.tol);
            Json edges = Json::array();
            for (auto [a, b] : intersection_graph(caps, c.tol)) edges.push_back({a, b});
            Json j{{"k", k}, {"caps", caps_j}, {"intersection_graph", edges}, {"k_ply", kr.holds},
                   {"ksets_meet_ball", eq.ksets_meet_ball}, {"agree", eq.agree()}};
            if (!kr.holds) j["deep_subset"] = indices(kr.subset);
            if (eq.offending_kset) j["offending_kset"] = indices(eq.offending_kset);
            write_json(c.out, j);
            exit_code = kr.holds ? kExitTrue : kExitFalse;
        };
    });

    // export ------------------------------------------------------------
    auto* exp = app.add_subcommand("export", "Convert a polytope or packing to json, off or svg");
    exp->add_option("--format", format)->required()->check(CLI::IsMember({"json", "off", "svg"}));
    exp->add_option("file", file);
    add_common(exp, c);
    exp->callback([&] {
        action = [&] {
            Json j = read_json(file);
            if (j.value("format", "") == kPackingFormat) {
                if (format != "svg" && format != "json") throw UsageError("packings export to json or svg");
                if (format == "json") {
                    write_json(c.out, j);
                    return;
                }
                BallPacking bp;
                bp.dim = j.at("dim").get<int>();
                for (const auto& b : j.at("balls")) {
                    auto ctr = b.at("center").get<std::vector<double>>();
                    bp.balls.push_back({Vec::Map(ctr.data(), ctr.size()), b.at("curvature").get<double>()});
                }
                write_text(c.out, packing_svg(bp));
                return;
            }
            Polytope P = polytope_from_json(j, c.trust, c.tol);
            if (format == "json")
                write_json(c.out, polytope_to_json(P, j.value("metadata", Json::object())));
            else if (format == "off")
                write_text(c.out, to_off(P));
            else
                write_text(c.out, polygon_svg(P));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return e.get_exit_code() == 0 ? rc : kExitUsage;
    }

    try {
        if (action) action();
    } catch (const UsageError& e) {
        std::cerr << "scribe: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        std::cerr << "scribe: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        std::cerr << "scribe: malformed input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "scribe: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GeometryError& e) {
        std::cerr << "scribe: " << e.what() << "\n";
        return kExitFalse;
    }
    return exit_code;
}
