#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gml/charts.hpp"
#include "gml/connect.hpp"
#include "gml/garnier.hpp"
#include "gml/higgs.hpp"
#include "gml/json_io.hpp"
#include "gml/monodromy.hpp"
#include "gml/verify.hpp"
#include "gml/version.hpp"

using namespace gml;

namespace {

using MQ = MultiQuad;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string params = "2,3,5";
    std::string mode;
    std::uint64_t seed = 42;
    std::string out;
};

bool exact_mode(const Config& cfg) {
    std::string m = cfg.mode;
    if (m.empty()) {
        const char* env = std::getenv("GML_MODE");
        m = env ? env : "exact";
    }
    if (m != "exact" && m != "float") throw UsageError("mode must be exact or float");
    return m == "exact";
}

Json header(const Config& cfg, const std::string& command, const CurveParams& c) {
    Json j = Json::object();
    j["tool"] = "gml";
    j["version"] = kVersion;
    j["command"] = command;
    j["mode"] = exact_mode(cfg) ? "exact" : "float";
    j["params"] = to_json(c);
    return j;
}

void emit(const Config& cfg, const Json& j) {
    std::string text = j.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw UsageError("cannot write " + cfg.out);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// inline JSON, or @file
Json json_arg(const std::string& text) {
    if (!text.empty() && text[0] == '@') return parse_json_text(read_file(text.substr(1)));
    return parse_json_text(text);
}

template <class F>
F num(const Json& j) {
    if constexpr (std::is_same_v<F, Rational>) return rational_from_json(j);
    else return complex_from_json(j);
}

template <class F>
std::vector<F> nums(const Json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) raise(Errc::ParseError, "expected an array of " + std::to_string(n) + " numbers");
    std::vector<F> out;
    for (const auto& x : j) out.push_back(num<F>(x));
    return out;
}

template <class F>
std::array<F, 3> triple(const Json& j) {
    auto v = nums<F>(j, 3);
    return {v[0], v[1], v[2]};
}

template <class F>
P1Point<F> p1_from(const Json& j) {
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity"))
        return P1Point<F>::infinity();
    return P1Point<F>::finite(num<F>(j));
}

template <class F>
Json p1_json(const P1Point<F>& p) {
    if (p.is_infinite()) return "inf";
    return to_json(p.value());
}

template <class F>
Json rst_json(const RSTCoordT<F>& x) {
    Json out = Json::array();
    for (const auto& p : x) out.push_back(p1_json(p));
    return out;
}

template <class F>
Json proj_json(const ProjPoint<F>& v) {
    return to_json(normalize_projective(v));
}

template <class F>
Json mat2_json(const Mat2<F>& m) {
    return Json::array({Json::array({to_json(m.a), to_json(m.b)}), Json::array({to_json(m.c), to_json(m.d)})});
}

template <class F>
Mat2<F> mat2_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) raise(Errc::ParseError, "2x2 matrices are [[a,b],[c,d]]");
    return {num<F>(j[0][0]), num<F>(j[0][1]), num<F>(j[1][0]), num<F>(j[1][1])};
}

template <class F>
Json matrix_json(const Matrix<F>& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

template <class F>
TyurinCoordT<F> tyurin_from(const CurveParamsT<F>& c, const Json& j) {
    for (const char* k : {"x1", "y1", "x2", "y2", "lambda"})
        if (!j.contains(k)) raise(Errc::ParseError, "tyurin points are {x1, y1, x2, y2, lambda}");
    return {CurvePointT<F>::affine(c, num<F>(j["x1"]), num<F>(j["y1"])),
            CurvePointT<F>::affine(c, num<F>(j["x2"]), num<F>(j["y2"])), p1_from<F>(j["lambda"])};
}

// ------------------------------------------------------------------ convert

template <class F>
Json convert_impl(const CurveParams& cp, const std::string& from, const std::string& to, const Json& pt) {
    auto c = cp.template cast<F>();
    Json out = Json::object();
    auto as_rst = [&]() {
        if (!pt.is_array() || pt.size() != 3) raise(Errc::ParseError, "rst points are [R, S, T]");
        return RSTCoordT<F>{p1_from<F>(pt[0]), p1_from<F>(pt[1]), p1_from<F>(pt[2])};
    };
    auto as_proj = [&]() {
        auto v = nums<F>(pt, 4);
        return ProjPoint<F>(v.begin(), v.end());
    };
    if (from == "rst") {
        auto x = as_rst();
        if (to == "nr") out["nr"] = proj_json(rst_to_nr(c, x));
        else if (to == "bertram") out["bertram"] = proj_json(rst_to_bertram(c, x));
        else if (to == "rst") out["rst"] = rst_json(x);
        else throw UsageError("rst converts to nr, bertram or rst");
    } else if (from == "bertram") {
        auto b = as_proj();
        if (to == "nr") out["nr"] = proj_json(bertram_to_nr(c, b));
        else if (to == "rst") out["rst"] = rst_json(bertram_to_rst(c, b));
        else if (to == "bertram") out["bertram"] = proj_json(b);
        else throw UsageError("bertram converts to nr, rst or bertram");
    } else if (from == "nr") {
        auto v = as_proj();
        if (to == "nr") {
            out["nr"] = proj_json(v);
        } else if (to == "rst" || to == "bertram") {
            auto pre = nr_to_rst(c, v);
            Json pts = Json::array();
            using G = typename RootField<F>::type;
            auto cg = c.template cast<G>();
            for (const auto& p : pre.points) pts.push_back(to == "rst" ? rst_json(p) : proj_json(rst_to_bertram(cg, p)));
            out[to] = pts;
            out["on_kummer"] = pre.on_kummer;
        } else {
            throw UsageError("nr converts to rst, bertram or nr");
        }
    } else if (from == "tyurin") {
        auto tc = tyurin_from(c, pt);
        auto q = tyurin_quotient(c, tc);
        out["quotient"] = Json::object({{"s", to_json(q.s)}, {"p", to_json(q.p)}, {"lambda", p1_json(q.lambda)}});
        if (to == "nr") out["nr"] = proj_json(tyurin_to_nr(c, q));
        else if (to == "bertram") out["bertram"] = proj_json(tyurin_to_bertram(c, tc));
        else if (to == "rst") out["rst"] = rst_json(bertram_to_rst(c, tyurin_to_bertram(c, tc)));
        else throw UsageError("tyurin converts to nr, bertram or rst");
    } else {
        throw UsageError("unknown chart " + from);
    }
    return out;
}

// a Tyurin point needs y on the curve, which is rarely rational
template <class F>
bool tyurin_exact_ok(const CurveParams& c, const Json& pt) {
    try {
        tyurin_from<Rational>(c, pt);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// ------------------------------------------------------------------ kummer

template <class F>
Json kummer_impl(const CurveParams& cp, const std::string& eval, bool nodes, const std::string& plane,
                 const std::string& twist, const std::string& point) {
    auto c = cp.template cast<F>();
    Json out = Json::object();
    if (!eval.empty()) {
        auto v = nums<F>(json_arg(eval), 4);
        F q = kummer_quartic(c, ProjPoint<F>(v.begin(), v.end()));
        out["point"] = to_json(v);
        out["quartic"] = to_json(q);
        out["on_kummer"] = is_zero(q);
    }
    if (nodes) {
        Json list = Json::array();
        for (const auto& tau : TwoTorsion::all())
            list.push_back(Json::object({{"tau", tau.to_string()}, {"nr", proj_json(singular_point(c, tau))}}));
        out["nodes"] = list;
    }
    if (!plane.empty()) {
        auto th = ThetaChar::parse(plane);
        Json on = Json::array();
        for (const auto& tau : th.nodes()) on.push_back(tau.to_string());
        out["plane"] = Json::object({{"theta", th.to_string()}, {"coeffs", to_json(gunning_plane(c, th))}, {"nodes", on}});
    }
    if (!twist.empty()) {
        auto tau = TwoTorsion::parse(twist);
        Json t = Json::object();
        t["tau"] = tau.to_string();
        t["matrix"] = matrix_json(twist_matrix(c, tau));
        if (!point.empty()) {
            auto v = nums<F>(json_arg(point), 4);
            t["image"] = proj_json(twist_action(c, tau, ProjPoint<F>(v.begin(), v.end())));
        }
        out["twist"] = t;
    }
    return out;
}

// ------------------------------------------------------------------ hitchin

template <class F>
Json hitchin_json(const CurveParamsT<F>& c, const HitchinValueT<F>& h) {
    Json out = Json::object();
    out["h0"] = to_json(h.h0);
    out["h1"] = to_json(h.h1);
    out["h2"] = to_json(h.h2);
    out["H"] = to_json(vgp_hamiltonians(c, h));
    return out;
}

template <class F>
Json hitchin_impl(const CurveParams& cp, const std::string& chart, const Json& pt, const Json& cov) {
    auto c = cp.template cast<F>();
    auto xi = triple<F>(cov);
    if (chart == "rst") {
        auto z = triple<F>(pt);
        return hitchin_json(c, hitchin_rst(c, HiggsCoordT<F>{z[0], z[1], z[2], xi[0], xi[1], xi[2]}));
    }
    ProjPoint<F> p;
    if (pt.is_array() && pt.size() == 3) {
        auto a = triple<F>(pt);
        p = chart == "nr" ? ProjPoint<F>{a[0], a[1], a[2], from_int<F>(1)} : ProjPoint<F>{from_int<F>(1), a[0], a[1], a[2]};
    } else {
        auto v = nums<F>(pt, 4);
        p.assign(v.begin(), v.end());
    }
    if (chart == "bertram") return hitchin_json(c, hitchin_bertram(c, p, xi));
    if (chart == "nr") return hitchin_json(c, hitchin_nr(c, p, xi));
    throw UsageError("hitchin charts are rst, bertram, nr and sym");
}

Json hitchin_sym_impl(const CurveParams& c, const Json& pt, const Json& cov, const std::string& signs) {
    std::array<int, 4> sg{1, 1, 1, 1};
    if (!signs.empty()) {
        std::stringstream ss(signs);
        std::string item;
        std::size_t k = 0;
        while (std::getline(ss, item, ',')) {
            if (k >= 4 || (item != "+" && item != "-")) throw UsageError("--signs takes four of + or -");
            sg[k++] = item == "+" ? 1 : -1;
        }
        if (k != 4) throw UsageError("--signs takes four of + or -");
    }
    auto h = hudson_forms(c, sg);
    auto cm = c.cast<MQ>();
    auto t = nums<Rational>(pt, 4);
    auto e = triple<Rational>(cov);
    auto val = hitchin_sym(cm, {MQ(t[0]), MQ(t[1]), MQ(t[2]), MQ(t[3])}, {MQ(e[0]), MQ(e[1]), MQ(e[2])});
    Json out = hitchin_json(cm, val);
    out["signs"] = sg;
    (void)h;
    return out;
}

// ------------------------------------------------------------------ connection

template <class F>
Json system_json(const FuchsianSystemT<F>& s) {
    Json out = Json::object();
    out["poles"] = to_json(s.poles);
    out["labels"] = s.labels;
    Json res = Json::array(), par = Json::array(), poly = Json::array();
    for (const auto& R : s.residues) res.push_back(mat2_json(R));
    for (const auto& P : s.poly) poly.push_back(mat2_json(P));
    for (const auto& d : s.parabolics) par.push_back(d ? to_json(*d) : Json(nullptr));
    out["residues"] = res;
    out["poly"] = poly;
    out["residue_inf"] = mat2_json(s.residue_inf);
    out["parabolics"] = par;
    out["parabolic_inf"] = s.parabolic_inf ? to_json(*s.parabolic_inf) : Json(nullptr);
    out["degree"] = s.degree;
    out["fuchs_defect"] = to_json(s.fuchs_defect());
    return out;
}

FuchsianSystemT<Complex> system_from(const Json& j) {
    FuchsianSystemT<Complex> s;
    for (const char* k : {"poles", "residues"})
        if (!j.contains(k)) raise(Errc::ParseError, std::string("system JSON needs \"") + k + "\"");
    for (const auto& p : j["poles"]) s.poles.push_back(complex_from_json(p));
    for (const auto& R : j["residues"]) s.residues.push_back(mat2_from<Complex>(R));
    if (s.poles.size() != s.residues.size()) raise(Errc::ParseError, "poles and residues differ in length");
    if (j.contains("labels")) s.labels = j["labels"].get<std::vector<std::string>>();
    else
        for (std::size_t k = 0; k < s.poles.size(); ++k) s.labels.push_back(std::to_string(k));
    if (j.contains("poly"))
        for (const auto& P : j["poly"]) s.poly.push_back(mat2_from<Complex>(P));
    if (j.contains("residue_inf")) s.residue_inf = mat2_from<Complex>(j["residue_inf"]);
    s.parabolics.resize(s.poles.size());
    if (j.contains("degree")) s.degree = j["degree"].get<int>();
    return s;
}

struct ConnArgs {
    std::string build = "canonical", z, c, kappas, scheme, point, elm, sign = "+", dir;
    bool galois = false, apparent = false;
};

template <class F>
ExponentSchemeT<F> scheme_from(const ConnArgs& a) {
    if (a.scheme == "switched") return switched_scheme<F>();
    if (a.scheme == "half" || (a.scheme.empty() && a.kappas.empty())) return ExponentSchemeT<F>::half();
    if (!a.scheme.empty()) throw UsageError("--scheme is half or switched");
    auto k = nums<F>(json_arg(a.kappas), 6);
    return ExponentSchemeT<F>::with_kappas({k[0], k[1], k[2], k[3], k[4], k[5]});
}

template <class F>
FuchsianSystemT<F> build_system(const CurveParamsT<F>& c, const ConnArgs& a) {
    if (a.z.empty()) throw UsageError("--z [R,S,T] is required");
    auto z = triple<F>(json_arg(a.z));
    std::array<F, 3> cc{};
    if (!a.c.empty()) cc = triple<F>(json_arg(a.c));
    if (a.build == "canonical") return canonical_connection(c, z[0], z[1], z[2], cc);
    if (a.build == "universal") return universal_connection(c, scheme_from<F>(a), z, cc);
    throw UsageError("--build is canonical, universal or lagrangian");
}

template <class F>
Json tyurin_conn_json(const TyurinConnectionT<F>& t) {
    return Json::object({{"A", to_json(t.A)}, {"C", to_json(t.C)}, {"b", to_json(t.b)}});
}

template <class F>
Json connection_impl(const CurveParams& cp, const ConnArgs& a) {
    auto c = cp.template cast<F>();
    Json out = Json::object();
    if (a.build == "lagrangian") {
        if (a.point.empty()) throw UsageError("--point {x1,y1,x2,y2,lambda} is required");
        auto tc = tyurin_from(c, json_arg(a.point));
        auto [plus, minus] = nabla_pm(c, tc);
        out["section"] = tyurin_conn_json(lagrangian_section(c, tc));
        out["nabla_plus"] = tyurin_conn_json(plus);
        out["nabla_minus"] = tyurin_conn_json(minus);
        return out;
    }
    auto sys = build_system(c, a);
    if (a.galois) sys = galois_symmetry(sys, weierstrass_divisor());
    if (!a.elm.empty()) {
        if (a.sign != "+" && a.sign != "-") throw UsageError("--sign is + or -");
        std::size_t i = sys.index(a.elm);
        Dir2<F> d;
        if (!a.dir.empty()) {
            auto v = nums<F>(json_arg(a.dir), 2);
            d = {v[0], v[1]};
        } else {
            if (!sys.parabolic(i)) raise(Errc::NotEigendirection, "no parabolic direction at " + a.elm);
            d = *sys.parabolic(i);
        }
        sys = elementary_transform(sys, a.elm, d, a.sign == "+" ? 1 : -1);
    }
    out["system"] = system_json(sys);
    if (a.apparent) {
        auto ap = apparent_cubic(sys);
        out["apparent"] = Json::object({{"coeffs", to_json(ap.coeffs)}, {"identically_zero", ap.identically_zero}});
    }
    return out;
}

// ------------------------------------------------------------------ monodromy

Json cmat_json(const CMat2& m) { return mat2_json(m); }

Json rep_json(const MonodromyRep& rep) {
    Json out = Json::object();
    Json ms = Json::object();
    for (std::size_t i = 0; i < 6; ++i) ms[kRepLabels[i]] = cmat_json(rep.M[i]);
    out["basepoint"] = to_json(rep.basepoint);
    out["M"] = ms;
    out["product_residual"] = rep.product_residual();
    return out;
}

// ------------------------------------------------------------------ garnier

GarnierStateT<Complex> state_from(const Json& j) {
    for (const char* k : {"params", "q", "p"})
        if (!j.contains(k)) raise(Errc::ParseError, std::string("state JSON needs \"") + k + "\"");
    const auto& pj = j["params"];
    std::array<Complex, 3> P;
    if (pj.is_array()) P = triple<Complex>(pj);
    else P = {complex_from_json(pj.at("r")), complex_from_json(pj.at("s")), complex_from_json(pj.at("t"))};
    ExponentSchemeT<Complex> k = switched_scheme<Complex>();
    if (j.contains("kappas")) {
        auto v = nums<Complex>(j["kappas"], 6);
        k = ExponentSchemeT<Complex>::with_kappas({v[0], v[1], v[2], v[3], v[4], v[5]});
    } else if (j.contains("scheme") && j["scheme"] == "half") {
        k = ExponentSchemeT<Complex>::half();
    }
    DarbouxCoordT<Complex> d{triple<Complex>(j["q"]), triple<Complex>(j["p"])};
    return {CurveParamsT<Complex>(P[0], P[1], P[2]), d, k};
}

Json state_json(const GarnierStateT<Complex>& s) {
    Json out = Json::object();
    out["params"] = to_json(std::array<Complex, 3>{s.params.r, s.params.s, s.params.t});
    out["q"] = to_json(s.coord.q);
    out["p"] = to_json(s.coord.p);
    const auto& k = s.scheme;
    out["kappas"] = to_json(std::array<Complex, 6>{k.k0, k.k1, k.kr, k.ks, k.kt, k.kinf});
    out["rho"] = to_json(k.rho);
    return out;
}

std::vector<int> parse_ids(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int id = std::atoi(item.c_str());
        if (id < 1 || id > kCriterionCount) throw UsageError("criteria are numbered 1 to 13");
        out.push_back(id);
    }
    return out;
}

int fail_json(const std::string& kind, const std::string& code, const std::string& message, int status) {
    Json e = Json::object();
    e["tool"] = "gml";
    e["version"] = kVersion;
    e["error"] = kind;
    e["code"] = code;
    e["message"] = message;
    std::cerr << e.dump() << "\n";
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coordinate geometry of rank-2 bundles on genus-2 curves"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--params", cfg.params, "curve parameters r,s,t")->capture_default_str();
    app.add_option("--mode", cfg.mode, "exact or float (default: $GML_MODE, else exact)");
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--out", cfg.out, "write the JSON report to a file");
    app.set_version_flag("--version", kVersion);

    std::string from, to, point;
    auto* convert = app.add_subcommand("convert", "convert a point between charts");
    convert->add_option("--from", from)->required();
    convert->add_option("--to", to)->required();
    convert->add_option("--point", point, "JSON point, or @file")->required();

    std::string eval, plane, twist;
    bool nodes = false;
    auto* kummer = app.add_subcommand("kummer", "Kummer surface queries");
    kummer->add_option("--eval", eval, "NR point [v0,v1,v2,v3]");
    kummer->add_flag("--nodes", nodes, "the 16 nodes");
    kummer->add_option("--plane", plane, "Gunning plane of a theta characteristic, e.g. w0+w1-winf");
    kummer->add_option("--twist", twist, "translation by a 2-torsion point, e.g. w0-winf");
    kummer->add_option("--point", point, "point moved by --twist");

    std::string chart = "rst", covector, signs;
    auto* hitchin = app.add_subcommand("hitchin", "Hitchin Hamiltonians");
    hitchin->add_option("--chart", chart, "rst, bertram, nr or sym")->capture_default_str();
    hitchin->add_option("--point", point)->required();
    hitchin->add_option("--covector", covector)->required();
    hitchin->add_option("--signs", signs, "radical signs for sym, e.g. +,+,-,+");

    bool check = false;
    auto* poisson = app.add_subcommand("poisson", "Poisson brackets of the Hitchin Hamiltonians");
    poisson->add_flag("--check", check, "run the commutation suite");
    poisson->add_option("--point", point, "[R,S,T,cr,cs,ct]");

    ConnArgs ca;
    auto* connection = app.add_subcommand("connection", "build and transform Fuchsian systems");
    connection->add_option("--build", ca.build, "canonical, universal or lagrangian")->capture_default_str();
    connection->add_option("--z", ca.z, "[R,S,T]");
    connection->add_option("--c", ca.c, "[cr,cs,ct]");
    connection->add_option("--kappas", ca.kappas, "[k0,k1,kr,ks,kt,kinf]");
    connection->add_option("--scheme", ca.scheme, "half or switched");
    connection->add_option("--point", ca.point, "Tyurin point {x1,y1,x2,y2,lambda}");
    connection->add_option("--elm", ca.elm, "pole label for an elementary transformation");
    connection->add_option("--sign", ca.sign, "+ or -")->capture_default_str();
    connection->add_option("--dir", ca.dir, "direction [a,b]; default: the parabolic");
    connection->add_flag("--galois", ca.galois, "apply the Galois symmetry");
    connection->add_flag("--apparent", ca.apparent, "report the apparent cubic");

    std::string system_file, loops = "default";
    ConnArgs ma;
    ma.z = "[\"5/2\",4,\"9/2\"]";
    ma.c = "[\"1/3\",\"-1/2\",\"1/4\"]";
    auto* monodromy = app.add_subcommand("monodromy", "monodromy representation by numerical transport");
    monodromy->add_option("--system", system_file, "system JSON as written by `connection`");
    monodromy->add_option("--loops", loops)->capture_default_str();
    monodromy->add_option("--build", ma.build)->capture_default_str();
    monodromy->add_option("--z", ma.z)->capture_default_str();
    monodromy->add_option("--c", ma.c)->capture_default_str();
    monodromy->add_option("--kappas", ma.kappas);
    monodromy->add_option("--scheme", ma.scheme);

    std::string start, path;
    bool check_mono = false;
    auto* gflow = app.add_subcommand("garnier-flow", "integrate the isomonodromy flow");
    gflow->add_option("--start", start, "state JSON file")->required();
    gflow->add_option("--path", path, "[[r,s,t],...]")->required();
    gflow->add_flag("--check-monodromy", check_mono, "compare trace coordinates at both ends");

    auto* transv = app.add_subcommand("transversality", "transversality matrix at the Gunning locus");

    bool quick = false, full = false, timings = false;
    std::string only;
    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_flag("--quick", quick, "fixture only (default)");
    verify->add_flag("--full", full, "add 5 random parameter triples");
    verify->add_flag("--timings", timings, "include wall-clock seconds");
    verify->add_option("--criteria", only, "comma-separated subset, e.g. 1,10,12");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail_json("usage", "ParseError", e.what(), 2);
    }

    try {
        CurveParams cp = parse_params(cfg.params);
        bool exact = exact_mode(cfg);
        Json rep;

        if (*convert) {
            rep = header(cfg, "convert", cp);
            Json pt = json_arg(point);
            rep["inputs"] = Json::object({{"from", from}, {"to", to}, {"point", pt}});
            bool use_exact = exact && (from != "tyurin" || tyurin_exact_ok<Rational>(cp, pt));
            if (exact && !use_exact) rep["mode"] = "float";
            rep["result"] = use_exact ? convert_impl<Rational>(cp, from, to, pt) : convert_impl<Complex>(cp, from, to, pt);
        } else if (*kummer) {
            rep = header(cfg, "kummer", cp);
            rep["inputs"] = Json::object({{"eval", eval}, {"nodes", nodes}, {"plane", plane}, {"twist", twist}, {"point", point}});
            if (eval.empty() && !nodes && plane.empty() && twist.empty()) throw UsageError("kummer needs --eval, --nodes, --plane or --twist");
            rep["result"] = exact ? kummer_impl<Rational>(cp, eval, nodes, plane, twist, point)
                                  : kummer_impl<Complex>(cp, eval, nodes, plane, twist, point);
        } else if (*hitchin) {
            rep = header(cfg, "hitchin", cp);
            Json pt = json_arg(point), cv = json_arg(covector);
            rep["inputs"] = Json::object({{"chart", chart}, {"point", pt}, {"covector", cv}});
            if (chart == "sym") {
                if (!exact) throw UsageError("the sym chart is exact only");
                rep["result"] = hitchin_sym_impl(cp, pt, cv, signs);
            } else {
                rep["result"] = exact ? hitchin_impl<Rational>(cp, chart, pt, cv) : hitchin_impl<Complex>(cp, chart, pt, cv);
            }
        } else if (*poisson) {
            rep = header(cfg, "poisson", cp);
            if (!check && point.empty()) throw UsageError("poisson needs --check or --point");
            Json result = Json::object();
            if (!point.empty()) {
                auto x = nums<Rational>(json_arg(point), 6);
                HiggsCoordT<Rational> p{x[0], x[1], x[2], x[3], x[4], x[5]};
                const char* names[3] = {"h0", "h1", "h2"};
                const HamiltonianTag tags[3] = {HamiltonianTag::H0, HamiltonianTag::H1, HamiltonianTag::H2};
                Json br = Json::object();
                for (int a = 0; a < 3; ++a)
                    for (int b = a + 1; b < 3; ++b)
                        br[std::string("{") + names[a] + "," + names[b] + "}"] = to_json(poisson_bracket(cp, tags[a], tags[b], p));
                result["point"] = to_json(x);
                result["brackets"] = br;
            }
            bool ok = true;
            if (check) {
                VerifyOptions vo;
                vo.params = cp;
                vo.seed = cfg.seed;
                auto r = run_criterion(8, vo);
                result["check"] = Json::object({{"pass", r.pass}, {"values", r.values}});
                ok = r.pass;
            }
            rep["result"] = result;
            emit(cfg, rep);
            return ok ? 0 : 1;
        } else if (*connection) {
            rep = header(cfg, "connection", cp);
            rep["inputs"] = Json::object({{"build", ca.build}, {"z", ca.z}, {"c", ca.c}, {"kappas", ca.kappas},
                                          {"scheme", ca.scheme}, {"elm", ca.elm}, {"sign", ca.sign}, {"galois", ca.galois}});
            bool use_exact = exact && (ca.build != "lagrangian" || tyurin_exact_ok<Rational>(cp, json_arg(ca.point)));
            if (exact && !use_exact) rep["mode"] = "float";
            rep["result"] = use_exact ? connection_impl<Rational>(cp, ca) : connection_impl<Complex>(cp, ca);
        } else if (*monodromy) {
            rep = header(cfg, "monodromy", cp);
            if (loops != "default") throw UsageError("only --loops default is available");
            FuchsianSystemT<Complex> sys;
            if (!system_file.empty()) {
                Json sj = parse_json_text(read_file(system_file));
                if (sj.contains("result") && sj["result"].contains("system")) sj = sj["result"]["system"];
                sys = system_from(sj);
                rep["inputs"] = Json::object({{"system", system_file}, {"loops", loops}});
            } else {
                sys = to_complex(build_system(cp, ma));
                rep["inputs"] = Json::object({{"build", ma.build}, {"z", ma.z}, {"c", ma.c}, {"loops", loops}});
            }
            auto r = full_rep(sys);
            Json result = rep_json(r);
            Json lift = Json::object();
            try {
                auto g = genus2_lift(r);
                lift["A1"] = cmat_json(g.A1);
                lift["B1"] = cmat_json(g.B1);
                lift["A2"] = cmat_json(g.A2);
                lift["B2"] = cmat_json(g.B2);
                lift["relation_residual"] = g.relation_residual();
                lift["det_residual"] = g.det_residual();
            } catch (const Error& e) {
                lift["error"] = snake_case(errc_name(e.code()));
            }
            result["lift"] = lift;
            result["trace_coordinates"] = to_json(trace_coordinates(r));
            rep["result"] = result;
        } else if (*gflow) {
            rep = header(cfg, "garnier-flow", cp);
            Json sj = parse_json_text(read_file(start));
            auto s = state_from(sj);
            Json pj = json_arg(path);
            std::vector<std::array<Complex, 3>> pts;
            if (!pj.is_array()) throw UsageError("--path is a JSON array of [r,s,t]");
            for (const auto& v : pj) pts.push_back(triple<Complex>(v));
            rep["params"] = to_json(std::array<Complex, 3>{s.params.r, s.params.s, s.params.t});
            rep["inputs"] = Json::object({{"start", state_json(s)}, {"path", pj}});
            auto f = flow(s, pts);
            Json result = Json::object();
            result["end"] = state_json(f.state);
            result["steps"] = f.steps;
            bool ok = true;
            if (check_mono) {
                auto a = trace_coordinates(full_rep(darboux_connection(s)));
                auto b = trace_coordinates(full_rep(darboux_connection(f.state)));
                double drift = max_distance(a, b);
                result["monodromy"] = Json::object({{"trace_coordinates_start", to_json(a)},
                                                    {"trace_coordinates_end", to_json(b)},
                                                    {"drift", drift},
                                                    {"tol", 1e-5}});
                ok = drift < 1e-5;
            }
            rep["result"] = result;
            emit(cfg, rep);
            return ok ? 0 : 1;
        } else if (*transv) {
            rep = header(cfg, "transversality", cp);
            Json result = Json::object();
            if (exact) {
                auto T = transversality_matrix(cp);
                result["matrix"] = matrix_json(T.matrix);
                result["det"] = to_json(T.det);
            } else {
                auto T = transversality_matrix(cp.cast<Complex>());
                result["matrix"] = matrix_json(T.matrix);
                result["det"] = to_json(T.det);
            }
            rep["result"] = result;
        } else if (*verify) {
            if (quick && full) throw UsageError("choose one of --quick and --full");
            VerifyOptions vo;
            vo.params = cp;
            vo.seed = cfg.seed;
            vo.full = full;
            if (!only.empty()) vo.only = parse_ids(only);
            auto r = run_verify(vo);
            Json j = r.to_json(vo, timings);
            emit(cfg, j);
            return r.all_pass() ? 0 : 1;
        }
        emit(cfg, rep);
        return 0;
    } catch (const UsageError& e) {
        return fail_json("usage", "ParseError", e.what(), 2);
    } catch (const Error& e) {
        int status = e.code() == Errc::ParseError ? 2 : 1;
        return fail_json(snake_case(errc_name(e.code())), errc_name(e.code()), e.what(), status);
    } catch (const nlohmann::json::exception& e) {
        return fail_json("usage", "ParseError", e.what(), 2);
    }
}
