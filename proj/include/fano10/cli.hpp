#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fano10/grassw.hpp"
#include "fano10/serialize.hpp"
#include "fano10/verra.hpp"

namespace fano10::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* spec_version = "fano10-1.0";

// a seed degeneracy (as opposed to a falsified claim): exit code 2
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// field specs: q | fp:p | fpk:p:modulus (modulus = comma list, low degree
// first, e.g. fpk:10007:5,0,1 for GF(10007^2) with modulus x^2 + 5)
// ---------------------------------------------------------------------------

inline FieldPtr parse_field_spec(const std::string& spec) {
    if (spec == "q") return Field::rationals();
    auto parse_p = [&](const std::string& text) {
        std::uint64_t p = 0;
        try {
            std::size_t used = 0;
            p = std::stoull(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw UsageError("invalid characteristic in field spec: " + spec);
        }
        if (p <= 13) throw UsageError("finite characteristic must be a prime > 13");
        return p;
    };
    if (spec.rfind("fp:", 0) == 0) {
        std::uint64_t p = parse_p(spec.substr(3));
        try {
            return Field::prime(p);
        } catch (const std::exception& e) {
            throw UsageError(std::string("bad field spec: ") + e.what());
        }
    }
    if (spec.rfind("fpk:", 0) == 0) {
        std::string rest = spec.substr(4);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw UsageError("fpk spec needs a modulus: " + spec);
        std::uint64_t p = parse_p(rest.substr(0, colon));
        std::vector<std::uint64_t> modulus;
        std::stringstream ms(rest.substr(colon + 1));
        std::string item;
        while (std::getline(ms, item, ',')) {
            try {
                modulus.push_back(std::stoull(item));
            } catch (const std::exception&) {
                throw UsageError("invalid modulus coefficient in field spec: " + spec);
            }
        }
        try {
            return Field::extension(p, modulus);
        } catch (const std::exception& e) {
            throw UsageError(std::string("bad field spec: ") + e.what());
        }
    }
    throw UsageError("unknown field spec (expected q | fp:p | fpk:p:modulus): " + spec);
}

// ---------------------------------------------------------------------------
// configuration and report model
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string field_spec = "fp:10007";
    std::uint64_t seed = 1;
    std::string suite = "all"; // appendix | net | rulings | verra | all
    unsigned trials = 20;
    unsigned budget = 32;
    std::string out;           // output path ("" = stdout)
    std::string format = "json";

    void validate() const {
        static const std::vector<std::string> suites{"appendix", "net", "rulings", "verra", "all"};
        bool known = false;
        for (const auto& s : suites) known |= s == suite;
        if (!known) throw UsageError("unknown suite: " + suite);
        if (budget < 1) throw UsageError("budget must be >= 1");
        if (format != "json" && format != "text") throw UsageError("unknown format: " + format);
        parse_field_spec(field_spec); // throws UsageError when malformed
    }

    json to_json() const {
        return json{{"field", field_spec}, {"seed", seed},     {"suite", suite},
                    {"trials", trials},    {"budget", budget}};
    }
};

struct CheckRecord {
    std::string name;
    std::string anchor; // one-line statement of the verified claim
    std::string status; // pass | fail | skip
    std::string witness;
    json data; // structured payload (coefficients, matrices, scalars)
};

struct Report {
    RunConfig config;
    std::vector<CheckRecord> checks;

    void add(std::string name, std::string anchor, bool pass, std::string witness = "",
             json data = json::object()) {
        checks.push_back({std::move(name), std::move(anchor), pass ? "pass" : "fail",
                          std::move(witness), std::move(data)});
    }
    void skip(std::string name, std::string anchor, std::string why) {
        checks.push_back({std::move(name), std::move(anchor), "skip", std::move(why), json::object()});
    }

    std::string verdict() const {
        for (const auto& c : checks)
            if (c.status == "fail") return "fail";
        return "pass";
    }

    json to_json() const {
        json out;
        out["spec_version"] = spec_version;
        out["config"] = config.to_json();
        out["checks"] = json::array();
        for (const auto& c : checks) {
            json jc{{"name", c.name}, {"anchor", c.anchor}, {"status", c.status}, {"witness", c.witness}};
            if (!c.data.empty()) jc["data"] = c.data;
            out["checks"].push_back(std::move(jc));
        }
        out["verdict"] = verdict();
        return out;
    }
};

// ---------------------------------------------------------------------------
// instance files
// ---------------------------------------------------------------------------

struct Instance {
    std::string field_spec;
    std::uint64_t seed = 0;
    std::vector<std::string> omega; // 49 entries, row-major Gram of Omega
    std::string lam2, lam4, qform;  // normal-form data, polynomial text
    GenericityCertificate certificate;

    json to_json() const {
        json out;
        out["spec_version"] = spec_version;
        out["field"] = field_spec;
        out["seed"] = seed;
        out["omega"] = omega;
        out["normal_form"] = json{{"lam2", lam2}, {"lam4", lam4}, {"q", qform}};
        out["certificate"] = json{{"ok", certificate.ok},
                                  {"attempts", certificate.attempts},
                                  {"failures", certificate.failures}};
        return out;
    }

    static Instance from_json(const json& j) {
        if (!j.contains("spec_version") || !j["spec_version"].is_string())
            throw std::runtime_error("instance is missing the spec_version field");
        if (j["spec_version"].get<std::string>() != spec_version)
            throw std::runtime_error("instance spec_version mismatch: " +
                                     j["spec_version"].get<std::string>());
        Instance inst;
        inst.field_spec = j.at("field").get<std::string>();
        inst.seed = j.at("seed").get<std::uint64_t>();
        inst.omega = j.at("omega").get<std::vector<std::string>>();
        if (inst.omega.size() != 49) throw std::runtime_error("instance omega must have 49 entries");
        inst.lam2 = j.at("normal_form").at("lam2").get<std::string>();
        inst.lam4 = j.at("normal_form").at("lam4").get<std::string>();
        inst.qform = j.at("normal_form").at("q").get<std::string>();
        inst.certificate.ok = j.at("certificate").at("ok").get<bool>();
        inst.certificate.attempts = j.at("certificate").at("attempts").get<unsigned>();
        inst.certificate.failures = j.at("certificate").at("failures").get<std::vector<std::string>>();
        return inst;
    }
};

// deterministic generation of a seeded instance
inline Instance generate_instance(const RunConfig& cfg) {
    FieldPtr F = parse_field_spec(cfg.field_spec);
    if (!F->finite() || F->kind() != FieldKind::Prime)
        throw UsageError("gen requires a prime field (fp:p)");
    WOModel wo = WModel::build(F).project_from_node();
    NodalXModel model = [&]() {
        try {
            return NodalXModel::sample(wo, cfg.seed, cfg.budget);
        } catch (const std::exception& e) {
            throw DegeneracyError(std::string("nodal model sampling failed: ") + e.what());
        }
    }();
    NormalFormModel nf = NormalFormModel::build(F, cfg.seed);
    Instance inst;
    inst.field_spec = cfg.field_spec;
    inst.seed = cfg.seed;
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) inst.omega.push_back(model.omega().at(i, j).to_string());
    inst.lam2 = poly_to_text(nf.lam2());
    inst.lam4 = poly_to_text(nf.lam4());
    inst.qform = poly_to_text(nf.qform());
    inst.certificate = model.certificate();
    return inst;
}

// rebuild the nodal model of an instance; validation errors surface as
// DegeneracyError (the model no longer certifies)
inline NodalXModel instance_model(const Instance& inst, const WOModel& wo, SplitMix64& rng) {
    const FieldPtr& F = wo.field();
    ScalarMatrix omega8 = scalar_matrix(F, 8, 8);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) omega8.at(i, j) = F->parse(inst.omega[7 * i + j]);
    try {
        return NodalXModel::from_cone(wo, omega8, rng);
    } catch (const std::exception& e) {
        throw DegeneracyError(std::string("instance model rejected: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// suite: appendix (exact symbolic checks over the rationals, plus the
// global bundle-rank certificate over the configured field)
// ---------------------------------------------------------------------------

namespace detail {

inline bool subspaces_equal(const LinSubspace& a, const LinSubspace& b) {
    return a.proj_dim() == b.proj_dim() && a.intersect(b).proj_dim() == a.proj_dim();
}

} // namespace detail

inline void run_appendix_suite(Report& rep, const RunConfig& cfg) {
    FieldPtr Q = Field::rationals();
    WModel w = WModel::build(Q);

    {
        bool ok = true;
        auto param = w.orbit4_param_symbolic();
        for (const auto& e : w.equations_p9()) ok &= e.substitute(param).is_zero();
        rep.add("appendix.orbit4-on-w", "the dense-orbit parametrization satisfies every defining equation of W",
                ok);
    }
    {
        using namespace wcoord;
        ProjPoint O = w.orbit4_param(Q->zero(), Q->zero(), Q->zero(), Q->zero());
        LinSubspace t = w.tangent_space(O);
        bool eqs = t.proj_dim() == 4;
        const auto& b = t.basis();
        for (std::size_t r = 0; r < b.rows(); ++r) {
            for (unsigned k : {p9_x12, p9_x13, p9_x23}) eqs &= b.at(r, k).is_zero();
            eqs &= (b.at(r, p9_x14) + b.at(r, p9_x25)).is_zero();
            eqs &= (b.at(r, p9_x15) + b.at(r, p9_x34)).is_zero();
        }
        rep.add("appendix.tangent-at-node", "the tangent space of W at the node is cut by the stated linear forms",
                eqs);
        rep.add("appendix.tangent-misses-beta-plane", "the tangent space at the node is disjoint from the beta-plane",
                t.intersect(w.plane_pi()).proj_dim() == -1);
    }
    {
        WOModel wo = w.project_from_node();
        // the vertex parametrization satisfies the twisted-cubic minors and
        // the W_O equations; the composites are binary forms of degree <= 6,
        // so vanishing at 8 points certifies identical vanishing
        bool ok = true;
        for (long t = 0; t < 8 && ok; ++t) {
            ProjPoint c = wo.co_param(Q->one(), Q->from_int(t));
            ok &= wo.on_co(c) && wo.on_wo(c);
        }
        rep.add("appendix.vertex-cubic", "the vertex curve parametrization lies on C_O and on W_O", ok);
    }
    {
        using namespace wcoord;
        auto v = [&](unsigned i) { return MultiPoly::variable(Q, 8, i); };
        MultiPoly q1 = v(p7_x12) * v(p7_x34) - v(p7_x13) * v(p7_x24) + v(p7_x14) * v(p7_x23);
        MultiPoly q2 = v(p7_x12) * v(p7_x35) + v(p7_x13) * v(p7_x14) - v(p7_x34) * v(p7_x23);
        auto unit5 = [&](unsigned i) {
            std::vector<FieldElement> c(5, Q->zero());
            c[i] = Q->one();
            return ProjPoint(c);
        };
        bool ok = MultiPoly::proportional(w.gamma_w(unit5(4)).form(), q1) &&
                  MultiPoly::proportional(w.gamma_w(unit5(3)).form(), q2);
        rep.add("appendix.gamma-w-pencil", "gamma_W sends e5 and e4 to the two pencil quadrics", ok);
    }
    {
        WOModel wo = w.project_from_node();
        auto point3 = [&](long a, long b, long c) {
            return ProjPoint({Q->from_int(a), Q->from_int(b), Q->from_int(c)});
        };
        bool ok = detail::subspaces_equal(wo.mv4_fiber(point3(0, 0, 1)), wo.bundle_fiber(point3(1, 0, 0)));
        rep.add("appendix.mv4-fiber", "the M_V4 fiber at b = (0,0,1) equals the bundle fiber at a = (1,0,0)", ok);
    }
    {
        FieldPtr F = parse_field_spec(cfg.field_spec);
        WOModel wo = (F->same(*Q) ? w : WModel::build(F)).project_from_node();
        SplitMix64 rng(cfg.seed ^ 0xB0B0ULL);
        BundleRankRecord rec = wo.bundle_rank_check(std::max(8u, cfg.trials / 2), rng);
        json data{{"minors5_vanish", rec.minors5_vanish},
                  {"minor_certificate", rec.minor_certificate},
                  {"exhaustive_ok", rec.exhaustive_ok}};
        rep.add("appendix.bundle-rank", "the blow-up bundle matrix has rank 4 at every point of the base plane",
                rec.ok, rec.ok ? "" : "bundle rank certificate failed", data);
    }
}

// ---------------------------------------------------------------------------
// suite: net (discriminant septic, vertex map, adjugate identities)
// ---------------------------------------------------------------------------

inline void run_net_suite(Report& rep, const RunConfig& cfg, const NodalXModel& model) {
    const DiscriminantCurves& disc = model.curves();
    NetOfQuadrics net = model.net();
    const FieldPtr& F = model.field();
    SplitMix64 rng(cfg.seed ^ 0x7E77ULL);

    {
        bool deg = disc.septic.degree == 7 && disc.sextic.degree == 6 && disc.line.degree == 1;
        bool split = MultiPoly::proportional(disc.septic.poly, disc.line.poly * disc.sextic.poly);
        // exactly one factor of the line: the sextic is not divisible by it
        bool once = !disc.sextic.poly.divide_exact(disc.line.poly).has_value();
        rep.add("net.discriminant-splits",
                "the net discriminant is a septic splitting as the pencil line times a sextic, exactly once",
                deg && split && once);
    }
    {
        SplitMix64 r2 = rng.split();
        rep.add("net.gamma6-smooth", "the sextic factor of the discriminant is a smooth plane curve",
                plane_curve_smooth(disc.sextic.poly, r2));
    }
    {
        // restriction of the sextic to the pencil line has six simple roots
        MultiPoly s = MultiPoly::variable(F, 2, 0), t = MultiPoly::variable(F, 2, 1);
        MultiPoly restricted = disc.sextic.poly.substitute({s, t, MultiPoly::zero(F, 2)});
        bool ok = !restricted.is_zero() && restricted.total_degree() == 6;
        if (ok) {
            MultiPoly ds = restricted.derivative(0), dt = restricted.derivative(1);
            ok = !ds.is_zero() && !dt.is_zero() && binary_form_gcd(ds, dt, 0, 1).total_degree() == 0;
        }
        rep.add("net.gamma1-six-roots", "the pencil line meets the sextic in six simple points",
                ok, "", json{{"branch_points", model.pencil_branch_points().size()}});
    }
    {
        NetOfQuadrics nete = net.embedded(model.splitting_field());
        bool ok = model.pencil_branch_points().size() == 6 && model.singular_points().size() == 6;
        if (ok)
            for (const auto& p : model.pencil_branch_points()) {
                ProjPoint v = vertex_map(nete, p);
                bool found = false;
                for (const auto& si : model.singular_points()) found |= v == si;
                ok &= found;
            }
        rep.add("net.vertices-match-nodes", "the vertices over the six pencil branch points are the six nodes", ok);
    }
    {
        rep.add("net.adjugate-rank1", "all 2x2 adjugate minors are divisible by the determinant",
                adjugate_rank1_identity(net));
    }
    {
        SplitMix64 r3 = rng.split();
        MinRankRecord rec = min_rank_check(net, disc, std::max(100u, cfg.trials), r3);
        json data{{"on_curve", rec.on_curve}, {"off_curve", rec.off_curve}};
        rep.add("net.rank-statistics", "members have rank 6 on the discriminant and rank 7 off it", rec.ok,
                rec.witness, data);
    }
    {
        // vertex via the adjugate equals vertex via the kernel on random
        // rank-6 symmetric matrices
        SplitMix64 r4 = rng.split();
        bool ok = true;
        unsigned done = 0, guard = 0;
        while (done < 200 && guard++ < 1000 && ok) {
            ScalarMatrix m = scalar_matrix(F, 7, 7);
            for (int k = 0; k < 6; ++k) {
                std::vector<FieldElement> v;
                for (int i = 0; i < 7; ++i) v.push_back(F->random(r4));
                FieldElement c = F->random(r4);
                for (std::size_t i = 0; i < 7; ++i)
                    for (std::size_t j = 0; j < 7; ++j) m.at(i, j) = m.at(i, j) + c * v[i] * v[j];
            }
            ScalarMatrix probe = m;
            if (rank_of(probe) != 6) continue;
            ScalarMatrix adj = scalar_adjugate(m);
            std::optional<ProjPoint> via_adj;
            for (std::size_t col = 0; col < 7 && !via_adj; ++col) {
                std::vector<FieldElement> c;
                bool nonzero = false;
                for (std::size_t rr = 0; rr < 7; ++rr) {
                    c.push_back(adj.at(rr, col));
                    nonzero |= !c.back().is_zero();
                }
                if (nonzero) via_adj = ProjPoint(c);
            }
            auto ker = kernel_solve(m);
            ok &= via_adj.has_value() && ker.size() == 1 && *via_adj == ProjPoint(ker[0]);
            ++done;
        }
        rep.add("net.vertex-consistency",
                "on random rank-6 symmetric matrices the adjugate column and the kernel give the same vertex",
                ok && done == 200, done == 200 ? "" : "could not reach 200 rank-6 samples",
                json{{"samples", done}});
    }
}

// ---------------------------------------------------------------------------
// suite: rulings (parity rule oracle + the labeled divisor comparison)
// ---------------------------------------------------------------------------

namespace detail {

// Exhaustive, independent certification of the ruling parity rule over
// GF(5).  The standard rank-6 quadric in P^6 is identified with the cone
// over the Pluecker quadric of lines in P^3 via
//   x0 = p12, x1 = p34, x2 = p13, x3 = -p24, x4 = p14, x5 = p23,
// which carries p12 p34 - p13 p24 + p14 p23 to x0 x1 + x2 x3 + x4 x5.
// Under this identification the two families of 3-planes through the vertex
// are known explicitly: lines through a fixed point of P^3 (alpha) and
// lines inside a fixed plane of P^3 (beta).  The parity rule must agree
// with that classification on all pairs.
inline bool ruling_parity_oracle_gf5(std::string* witness = nullptr) {
    FieldPtr f = Field::prime(5);
    ScalarMatrix g = scalar_matrix(f, 7, 7);
    FieldElement half = f->from_int(2).inv();
    for (unsigned k = 0; k < 6; k += 2) {
        g.at(k, k + 1) = half;
        g.at(k + 1, k) = half;
    }
    Quadric q(g);

    auto wedge = [&](const std::array<FieldElement, 4>& a, const std::array<FieldElement, 4>& b) {
        auto pij = [&](int i, int j) { return a[i] * b[j] - a[j] * b[i]; };
        std::vector<FieldElement> x(7, f->zero());
        x[0] = pij(0, 1);
        x[1] = pij(2, 3);
        x[2] = pij(0, 2);
        x[3] = -pij(1, 3);
        x[4] = pij(0, 3);
        x[5] = pij(1, 2);
        return x;
    };

    // the 156 points of P^3 over GF(5), in normalized form
    std::vector<std::array<FieldElement, 4>> points;
    for (int lead = 0; lead < 4; ++lead) {
        std::array<long, 4> c{0, 0, 0, 0};
        c[lead] = 1;
        std::function<void(int)> fill = [&](int pos) {
            if (pos == 4) {
                std::array<FieldElement, 4> p{f->from_int(c[0]), f->from_int(c[1]), f->from_int(c[2]),
                                              f->from_int(c[3])};
                points.push_back(p);
                return;
            }
            if (pos <= lead) {
                fill(pos + 1);
                return;
            }
            for (long v = 0; v < 5; ++v) {
                c[pos] = v;
                fill(pos + 1);
            }
            c[pos] = 0;
        };
        fill(0);
    }
    if (points.size() != 156) {
        if (witness) *witness = "P^3(GF(5)) enumeration has the wrong size";
        return false;
    }

    auto dot = [&](const std::array<FieldElement, 4>& a, const std::array<FieldElement, 4>& b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    };

    std::vector<std::pair<LinSubspace, int>> planes; // (3-plane through the vertex, family)
    auto push_plane = [&](const std::array<std::vector<FieldElement>, 3>& span, int family) {
        ScalarMatrix rows = scalar_matrix(f, 4, 7);
        for (unsigned r = 0; r < 3; ++r)
            for (unsigned k = 0; k < 7; ++k) rows.at(r, k) = span[r][k];
        rows.at(3, 6) = f->one(); // the vertex
        planes.emplace_back(LinSubspace::from_rows(std::move(rows)), family);
    };
    for (const auto& p : points) {
        // alpha: lines through p, spanned by p wedge (three coordinate
        // vectors completing p to a basis of the 4-space)
        std::array<std::vector<FieldElement>, 3> span;
        unsigned got = 0;
        ScalarMatrix probe = scalar_matrix(f, 4, 4);
        for (unsigned k = 0; k < 4; ++k) probe.at(0, k) = p[k];
        for (unsigned k = 0; k < 4 && got < 3; ++k) {
            probe.at(got + 1, k) = f->one();
            ScalarMatrix copy = probe;
            if (rank_of(copy) != got + 2) {
                probe.at(got + 1, k) = f->zero();
                continue;
            }
            std::array<FieldElement, 4> e{f->zero(), f->zero(), f->zero(), f->zero()};
            e[k] = f->one();
            span[got++] = wedge(p, e);
        }
        if (got != 3) {
            if (witness) *witness = "alpha-plane construction degenerated";
            return false;
        }
        push_plane(span, 0);
        // beta: lines inside the plane p . x = 0, pairwise wedges of a
        // spanning triple of that plane
        std::vector<std::array<FieldElement, 4>> inplane;
        for (const auto& x : points)
            if (dot(p, x).is_zero()) {
                // keep only an independent triple
                if (inplane.size() == 2) {
                    ScalarMatrix probe = scalar_matrix(f, 3, 4);
                    for (unsigned r = 0; r < 2; ++r)
                        for (unsigned k = 0; k < 4; ++k) probe.at(r, k) = inplane[r][k];
                    for (unsigned k = 0; k < 4; ++k) probe.at(2, k) = x[k];
                    if (rank_of(probe) != 3) continue;
                }
                inplane.push_back(x);
                if (inplane.size() == 3) break;
            }
        if (inplane.size() != 3) {
            if (witness) *witness = "beta-plane construction degenerated";
            return false;
        }
        span = {wedge(inplane[0], inplane[1]), wedge(inplane[0], inplane[2]), wedge(inplane[1], inplane[2])};
        push_plane(span, 1);
    }

    // sanity: each plane is an isotropic 3-plane through the vertex
    for (const auto& [plane, family] : planes) {
        (void)family;
        if (plane.proj_dim() != 3 || !contains(q, plane)) {
            if (witness) *witness = "a constructed plane is not isotropic";
            return false;
        }
    }
    // all pairs: the parity rule agrees with the alpha/beta classification
    for (std::size_t i = 0; i < planes.size(); ++i)
        for (std::size_t j = i + 1; j < planes.size(); ++j) {
            bool expect = planes[i].second == planes[j].second;
            if (same_ruling(q, planes[i].first, planes[j].first) != expect) {
                if (witness) *witness = "parity rule disagrees with the Klein classification at pair (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
        }
    return true;
}

} // namespace detail

inline void run_rulings_suite(Report& rep, const RunConfig& cfg, const NodalXModel& model) {
    (void)cfg;
    {
        std::string witness;
        bool ok = detail::ruling_parity_oracle_gf5(&witness);
        rep.add("rulings.parity-oracle",
                "the intersection-parity rule matches the exhaustive two-family classification over GF(5)", ok,
                witness, json{{"planes", 312}});
    }
    {
        Gamma1Labels labels = gamma1_section_and_labels(model);
        bool meets = !labels.meets_at_si.empty(), diff = !labels.different_family.empty();
        for (bool b : labels.meets_at_si) meets &= b;
        for (bool b : labels.different_family) diff &= b;
        json data{{"section_ok", labels.section_ok},
                  {"vertices_match", labels.vertices_match},
                  {"meets_at_si", meets},
                  {"different_family", diff}};
        rep.add("rulings.gamma1-labels",
                "the P^3_W section and the beta-plane labels select opposite rulings over every branch point",
                labels.ok, "", data);
    }
}

// ---------------------------------------------------------------------------
// suite: verra (normal form, implicitization, discriminants, incidences)
// ---------------------------------------------------------------------------

inline void run_verra_suite(Report& rep, const RunConfig& cfg, const NormalFormModel& nf) {
    const FieldPtr& F = nf.field();
    SplitMix64 rng(cfg.seed ^ 0x4E44ULL);
    VerraSolid t = [&]() {
        try {
            return implicitize(nf, cfg.seed);
        } catch (const std::exception& e) {
            throw DegeneracyError(std::string("implicitization failed: ") + e.what());
        }
    }();
    rep.add("verra.implicitization",
            "the psi_ell image points determine a unique bidegree-(2,2) form, verified on fresh samples", true, "",
            json{{"form", poly_to_text(t.form)}});
    {
        bool ok = verra_smooth_sampled(t, nf, std::max(100u, cfg.trials), cfg.seed ^ 0x77AAULL);
        rep.add("verra.smoothness", "the implicitized solid has nonzero gradient at sampled points", ok);
    }
    {
        auto [d1, d2] = verra_discriminants(t);
        SplitMix64 r2 = rng.split();
        bool smooth1 = plane_curve_smooth(d1.poly, r2);
        bool smooth2 = plane_curve_smooth(d2.poly, r2);
        PlaneCurve star = normal_form_star(nf);
        bool prop1 = MultiPoly::proportional(d1.poly, star.poly);
        DiscriminantCurves net_disc = discriminant(nf.net());
        MultiPoly pulled = d2.poly.substitute(net_to_p_substitution(F));
        bool prop2 = MultiPoly::proportional(pulled, net_disc.sextic.poly);
        json data{{"disc1", poly_to_text(d1.poly)},
                  {"disc2", poly_to_text(d2.poly)},
                  {"disc1_matches_star", prop1},
                  {"disc2_matches_net_sextic", prop2}};
        rep.add("verra.discriminants",
                "both conic-bundle discriminants are smooth sextics matching the net data",
                d1.degree == 6 && d2.degree == 6 && smooth1 && smooth2 && prop1 && prop2, "", data);
    }
    {
        SplitMix64 r3 = rng.split();
        DelPezzoRecord rec = delpezzo_over_gamma1(t, nf, r3);
        json data{{"six_simple_roots", rec.six_simple_roots},
                  {"roots_match_pi", rec.roots_match_pi},
                  {"fiber_ranks", rec.fiber_ranks},
                  {"split_degree", rec.split_degree}};
        rep.add("verra.delpezzo", "the surface over the pencil line has six simple reducible fibers at the p_i",
                rec.ok, rec.witness, data);
    }
    {
        SplitMix64 r4 = rng.split();
        LineIncidenceRecord rec = line_incidence_check(t, nf, r4);
        json matrix = json::array();
        for (const auto& row : rec.incidence) {
            json jr = json::array();
            for (int v : row) jr.push_back(v);
            matrix.push_back(std::move(jr));
        }
        json data{{"incidence", matrix},
                  {"plus_z_degrees", rec.plus_zdeg},
                  {"minus_z_degrees", rec.minus_zdeg},
                  {"images_bidegree_11", rec.images_bidegree_11}};
        rep.add("verra.line-incidence",
                "the images of the twelve node lines realize the all-ones-minus-identity incidence matrix", rec.ok,
                rec.witness, data);
    }
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

inline void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

inline std::string render_report(const Report& rep, const std::string& format) {
    if (format == "json") return rep.to_json().dump(2) + "\n";
    std::ostringstream os;
    os << "spec_version " << spec_version << "\n";
    os << "config field=" << rep.config.field_spec << " seed=" << rep.config.seed
       << " suite=" << rep.config.suite << "\n";
    for (const auto& c : rep.checks) {
        os << c.status << "  " << c.name << "  [" << c.anchor << "]";
        if (!c.witness.empty()) os << "  -- " << c.witness;
        os << "\n";
    }
    os << "verdict " << rep.verdict() << "\n";
    return os.str();
}

inline int cmd_gen(const RunConfig& cfg) {
    cfg.validate();
    Instance inst = generate_instance(cfg);
    write_output(cfg.out, inst.to_json().dump(2) + "\n");
    return 0;
}

inline int cmd_verify(RunConfig cfg, const std::string& instance_path = "") {
    cfg.validate();
    std::optional<Instance> inst;
    if (!instance_path.empty()) {
        std::ifstream in(instance_path, std::ios::binary);
        if (!in) throw UsageError("cannot read instance file: " + instance_path);
        json j = json::parse(in, nullptr, true);
        inst = Instance::from_json(j);
        cfg.field_spec = inst->field_spec;
        cfg.seed = inst->seed;
    }
    FieldPtr F = parse_field_spec(cfg.field_spec);
    Report rep;
    rep.config = cfg;

    bool want = cfg.suite == "all";
    auto wants = [&](const char* s) { return want || cfg.suite == s; };
    const bool finite_prime = F->finite() && F->kind() == FieldKind::Prime;

    if (wants("appendix")) run_appendix_suite(rep, cfg);

    if (wants("net") || wants("rulings") || wants("verra")) {
        if (!finite_prime) {
            const char* why = "requires a prime field (fp:p)";
            if (wants("net")) rep.skip("net", "net suite", why);
            if (wants("rulings")) rep.skip("rulings", "rulings suite", why);
            if (wants("verra")) rep.skip("verra", "verra suite", why);
        } else {
            WOModel wo = WModel::build(F).project_from_node();
            SplitMix64 rng(cfg.seed);
            NodalXModel model = [&]() {
                if (inst) return instance_model(*inst, wo, rng);
                try {
                    return NodalXModel::sample(wo, cfg.seed, cfg.budget);
                } catch (const std::exception& e) {
                    throw DegeneracyError(std::string("nodal model sampling failed: ") + e.what());
                }
            }();
            NormalFormModel nf = NormalFormModel::build(F, cfg.seed);
            if (inst) {
                // instance consistency: the normal-form block must reproduce
                if (poly_to_text(nf.lam2()) != inst->lam2 || poly_to_text(nf.lam4()) != inst->lam4 ||
                    poly_to_text(nf.qform()) != inst->qform)
                    throw std::runtime_error("instance normal-form data does not match its seed");
            }
            if (wants("net")) run_net_suite(rep, cfg, model);
            if (wants("rulings")) run_rulings_suite(rep, cfg, model);
            if (wants("verra")) run_verra_suite(rep, cfg, nf);
        }
    }

    write_output(cfg.out, render_report(rep, cfg.format));
    return rep.verdict() == "pass" ? 0 : 1;
}

inline int cmd_report(const std::string& report_path, const std::string& format) {
    if (format != "json" && format != "text") throw UsageError("unknown format: " + format);
    std::ifstream in(report_path, std::ios::binary);
    if (!in) throw UsageError("cannot read report file: " + report_path);
    json j = json::parse(in, nullptr, true);
    if (!j.contains("spec_version") || !j["spec_version"].is_string())
        throw std::runtime_error("report is missing the spec_version field");
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "spec_version " << j["spec_version"].get<std::string>() << "\n";
    if (j.contains("config")) {
        const auto& c = j["config"];
        std::cout << "config field=" << c.value("field", std::string("?")) << " seed=" << c.value("seed", 0ULL)
                  << " suite=" << c.value("suite", std::string("?")) << "\n";
    }
    for (const auto& c : j.value("checks", json::array())) {
        std::cout << c.value("status", std::string("?")) << "  " << c.value("name", std::string("?")) << "  ["
                  << c.value("anchor", std::string()) << "]";
        std::string witness = c.value("witness", std::string());
        if (!witness.empty()) std::cout << "  -- " << witness;
        std::cout << "\n";
    }
    std::cout << "verdict " << j.value("verdict", std::string("?")) << "\n";
    return 0;
}

} // namespace fano10::cli
