#include "scribe/io.hpp"

#include "scribe/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace scribe {

namespace {

Json mask_json(Mask m) { return indices(m); }

Mask mask_from_json(const Json& j, int n) {
    Mask m = 0;
    for (const auto& v : j) {
        const int i = v.get<int>();
        if (i < 0 || i >= n) throw FormatError("vertex index out of range");
        m |= bit(i);
    }
    return m;
}

Json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Rational rational_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("rational coordinate must be a [numerator, denominator] pair");
    auto part = [](const Json& x) { return x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()); };
    Rational q(part(j[0]) + "/" + part(j[1]));
    if (q.get_den() == 0) throw FormatError("zero denominator");
    q.canonicalize();
    return q;
}

// Facet normals fitted to a trusted lattice, normalized as hull() does.
Polytope with_lattice(int d, Form form, std::vector<Vec> vertices, FaceLattice L) {
    Polytope P;
    P.dim = d;
    P.form = form;
    P.vertices = std::move(vertices);
    P.lattice = std::move(L);
    for (int i = 0; i < P.n_vertices(); ++i) P.source.push_back(i);
    const Mat G = P.generator_matrix();
    for (Mask f : P.lattice.facets()) {
        const auto idx = indices(f);
        Mat R(idx.size(), d + 1);
        for (std::size_t k = 0; k < idx.size(); ++k) R.row(k) = G.col(idx[k]).transpose();
        Mat N = null_space(R);
        if (N.cols() != 1) throw FormatError("lattice facet does not span a hyperplane");
        Vec h = N.col(0);
        const Vec s = G.transpose() * h;
        if (s.maxCoeff() > -s.minCoeff()) h = -h;
        if (form == Form::Euclidean)
            h /= h.tail(d).norm();
        else
            h.normalize();
        P.facet_normals.push_back(h);
    }
    return P;
}

} // namespace

Json polytope_to_json(const Polytope& P, const Json& metadata) {
    Json j;
    j["format"] = kPolytopeFormat;
    j["dim"] = P.dim;
    j["form"] = to_string(P.form);
    j["scalar"] = P.is_exact() ? "rational" : "float64";
    Json verts = Json::array();
    if (P.is_exact()) {
        for (const RVec& v : P.exact) {
            Json row = Json::array();
            for (const Rational& q : v) row.push_back({q.get_num().get_str(), q.get_den().get_str()});
            verts.push_back(row);
        }
    } else {
        for (const Vec& v : P.vertices) verts.push_back(vec_json(v));
    }
    j["vertices"] = verts;
    Json lat = Json::array();
    for (int r = 0; r < P.dim; ++r) {
        Json faces = Json::array();
        for (Mask f : P.lattice.faces(r)) faces.push_back(mask_json(f));
        lat.push_back(faces);
    }
    j["lattice"] = lat;
    j["metadata"] = metadata.is_null() ? Json::object() : metadata;
    return j;
}

Polytope polytope_from_json(const Json& j, bool trust_lattice, double tol) {
    if (!j.is_object() || j.value("format", "") != kPolytopeFormat) throw FormatError("not a scribe-polytope/1 document");
    const int d = j.at("dim").get<int>();
    const std::string form_s = j.at("form").get<std::string>();
    if (form_s != "euclidean" && form_s != "cone") throw FormatError("form must be euclidean or cone");
    const Form form = form_s == "euclidean" ? Form::Euclidean : Form::Cone;
    const std::string scalar = j.value("scalar", "float64");
    const int width = form == Form::Euclidean ? d : d + 1;
    const Json& vj = j.at("vertices");
    const int n = static_cast<int>(vj.size());
    if (d < 1 || n < d + 1 || n > kMaxVertices) throw FormatError("bad dimension or vertex count");

    std::vector<Vec> pts;
    std::vector<RVec> exact;
    for (const auto& row : vj) {
        if (static_cast<int>(row.size()) != width) throw FormatError("vertex has the wrong number of coordinates");
        if (scalar == "rational") {
            RVec r;
            for (const auto& c : row) r.push_back(rational_from_json(c));
            Vec v(width);
            for (int k = 0; k < width; ++k) v(k) = to_double(r[k]);
            exact.push_back(std::move(r));
            pts.push_back(v);
        } else if (scalar == "float64") {
            Vec v(width);
            for (int k = 0; k < width; ++k) v(k) = row[k].get<double>();
            pts.push_back(v);
        } else {
            throw FormatError("scalar must be float64 or rational");
        }
    }

    std::optional<FaceLattice> stored;
    if (j.contains("lattice") && !j["lattice"].is_null()) {
        const Json& lj = j["lattice"];
        if (static_cast<int>(lj.size()) != d) throw FormatError("lattice must list ranks 0..d-1");
        std::vector<Mask> facets;
        for (const auto& f : lj[d - 1]) facets.push_back(mask_from_json(f, n));
        stored = FaceLattice::from_facets(n, facets);
        for (int r = 0; r < d; ++r) {
            std::vector<Mask> listed;
            for (const auto& f : lj[r]) listed.push_back(mask_from_json(f, n));
            std::sort(listed.begin(), listed.end());
            std::vector<Mask> have = stored->faces(r);
            std::sort(have.begin(), have.end());
            if (listed != have) throw FormatError("lattice ranks are inconsistent with its facets");
        }
    }

    if (trust_lattice && stored) {
        Polytope P = with_lattice(d, form, std::move(pts), std::move(*stored));
        P.exact = std::move(exact);
        return P;
    }

    Polytope P = exact.empty() ? hull(pts, form, tol) : hull_exact(exact, form);
    if (P.dim != d) throw FormatError("vertices do not span the stated dimension");
    if (P.n_vertices() != n) throw FormatError("some listed vertices are not extreme");
    if (stored && P.lattice != *stored) throw FormatError("stored lattice disagrees with the hull");
    return P;
}

Json face_class_to_json(const FaceClass& fc) {
    Json j;
    j["face"] = mask_json(fc.face);
    j["rank"] = fc.rank;
    j["strong_cut"] = fc.strong_cut;
    j["weak_cut"] = fc.weak_cut;
    j["strong_avoid"] = fc.strong_avoid;
    j["weak_avoid"] = fc.weak_avoid;
    j["tangent"] = fc.tangent;
    j["weak_tangent"] = fc.weak_tangent;
    j["indeterminate"] = fc.indeterminate;
    if (!fc.note.empty()) j["note"] = fc.note;
    j["min_norm"] = std::isfinite(fc.min_norm) ? Json(fc.min_norm) : Json(nullptr);
    j["span_distance"] = fc.span_distance;
    if (fc.witness_point) j["witness_point"] = vec_json(*fc.witness_point);
    if (fc.witness_plane) j["witness_plane"] = vec_json(*fc.witness_plane);
    return j;
}

Json report_to_json(const ScribedReport& r, std::optional<std::uint64_t> seed) {
    Json j;
    j["format"] = kReportFormat;
    j["i"] = r.i;
    j["j"] = r.j;
    j["mode"] = to_string(r.mode);
    j["tol"] = r.tol;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["verdict"] = to_string(r.verdict);
    Json faces = Json::array();
    for (const auto& fc : r.faces) faces.push_back(face_class_to_json(fc));
    j["faces"] = faces;
    auto masks = [](const std::vector<Mask>& ms) {
        Json a = Json::array();
        for (Mask m : ms) a.push_back(mask_json(m));
        return a;
    };
    j["avoid_violations"] = masks(r.avoid_violations);
    j["cut_violations"] = masks(r.cut_violations);
    j["undecided"] = masks(r.undecided);
    return j;
}

Verdict verdict_from_report_json(const Json& j) {
    if (j.value("format", "") != kReportFormat) throw FormatError("not a scribe-report/1 document");
    const int i = j.at("i").get<int>(), jr = j.at("j").get<int>();
    const bool strong = j.at("mode").get<std::string>() == "strong";
    bool violated = false, undecided = false;
    for (const auto& f : j.at("faces")) {
        const int r = f.at("rank").get<int>();
        const bool indet = f.at("indeterminate").get<bool>();
        if (r == i) {
            const bool ok = f.at(strong ? "strong_avoid" : "weak_avoid").get<bool>();
            if (!ok) (strong && indet ? undecided : violated) = true;
        }
        if (r == jr) {
            const bool ok = f.at(strong ? "strong_cut" : "weak_cut").get<bool>();
            if (!ok) (strong && indet ? undecided : violated) = true;
        }
    }
    if (violated) return Verdict::False;
    return undecided ? Verdict::Indeterminate : Verdict::True;
}

Json packing_to_json(const BallPacking& bp) {
    Json j;
    j["format"] = kPackingFormat;
    j["dim"] = bp.dim;
    Json balls = Json::array();
    for (std::size_t k = 0; k < bp.balls.size(); ++k) {
        Json b;
        b["center"] = vec_json(bp.balls[k].center);
        b["curvature"] = bp.balls[k].curvature;
        if (k < bp.labels.size()) b["label"] = to_string(bp.labels[k]);
        balls.push_back(b);
    }
    j["balls"] = balls;
    Json t = Json::array();
    for (auto [a, b] : bp.tangencies) t.push_back({a, b});
    j["tangencies"] = t;
    j["max_tangency_residual"] = bp.max_tangency_residual();
    j["min_separation"] = bp.min_separation();
    return j;
}

std::string to_off(const Polytope& P_in) {
    Polytope P = to_euclidean_if_possible(P_in);
    if (P.dim != 3 || P.form != Form::Euclidean) throw FormatError("OFF export needs a Euclidean 3-polytope");
    std::ostringstream os;
    os.precision(17);
    const auto& facets = P.lattice.facets();
    os << "OFF\n" << P.n_vertices() << ' ' << facets.size() << ' ' << P.lattice.faces(1).size() << '\n';
    for (const Vec& v : P.vertices) os << v(0) << ' ' << v(1) << ' ' << v(2) << '\n';
    for (std::size_t k = 0; k < facets.size(); ++k) {
        auto idx = indices(facets[k]);
        Vec c = Vec::Zero(3);
        for (int i : idx) c += P.vertices[i];
        c /= static_cast<double>(idx.size());
        // Counterclockwise seen from outside.
        const Vec nrm = P.facet_normals[k].tail(3);
        Vec e1 = P.vertices[idx[0]] - c;
        e1.normalize();
        Eigen::Vector3d n3 = nrm, a3 = e1;
        Vec e2 = n3.cross(a3);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            const Vec pa = P.vertices[a] - c, pb = P.vertices[b] - c;
            return std::atan2(pa.dot(e2), pa.dot(e1)) < std::atan2(pb.dot(e2), pb.dot(e1));
        });
        os << idx.size();
        for (int i : idx) os << ' ' << i;
        os << '\n';
    }
    return os.str();
}

std::string polygon_svg(const Polytope& P_in) {
    Polytope P = to_euclidean_if_possible(P_in);
    if (P.dim != 2 || P.form != Form::Euclidean) throw FormatError("SVG export needs a Euclidean polygon");
    // Walk the boundary through the edge adjacency.
    const auto adj = P.lattice.vertex_adjacency();
    std::vector<int> order{0};
    int prev = -1, cur = 0;
    while (static_cast<int>(order.size()) < P.n_vertices()) {
        int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    double extent = 1;
    for (const Vec& v : P.vertices) extent = std::max(extent, v.cwiseAbs().maxCoeff());
    extent *= 1.1;
    std::ostringstream os;
    os.precision(12);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -extent << ' ' << -extent << ' ' << 2 * extent << ' '
       << 2 * extent << "\">\n";
    os << "<g transform=\"scale(1,-1)\" stroke-width=\"" << extent / 200 << "\">\n";
    os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"gray\"/>\n";
    os << "<polygon fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t k = 0; k < order.size(); ++k)
        os << (k ? " " : "") << P.vertices[order[k]](0) << ',' << P.vertices[order[k]](1);
    os << "\"/>\n</g>\n</svg>\n";
    return os.str();
}

std::string packing_svg(const BallPacking& bp) {
    if (bp.dim != 2) throw FormatError("SVG export needs a 2-d packing");
    double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
    for (const Ball& b : bp.balls) {
        const double r = b.radius();
        lo_x = std::min(lo_x, b.center(0) - r);
        hi_x = std::max(hi_x, b.center(0) + r);
        lo_y = std::min(lo_y, b.center(1) - r);
        hi_y = std::max(hi_y, b.center(1) + r);
    }
    const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
    std::ostringstream os;
    os.precision(12);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo_x - pad << ' ' << lo_y - pad << ' '
       << hi_x - lo_x + 2 * pad << ' ' << hi_y - lo_y + 2 * pad << "\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << (hi_x - lo_x) / 400 << "\">\n";
    for (std::size_t k = 0; k < bp.balls.size(); ++k) {
        const Ball& b = bp.balls[k];
        os << "<circle cx=\"" << b.center(0) << "\" cy=\"" << b.center(1) << "\" r=\"" << b.radius() << '"';
        if (k < bp.labels.size()) os << " data-label=\"" << to_string(bp.labels[k]) << '"';
        os << "/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace scribe
