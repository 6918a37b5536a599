#include "htheta/harness.hpp"

#include <chrono>
#include <sstream>

namespace htheta {

std::string family_name_string(FamilyName n) {
    switch (n) {
        case FamilyName::a_n_curve: return "a_n_curve";
        case FamilyName::a_n_surface: return "a_n_surface";
        case FamilyName::a_n_threefold: return "a_n_threefold";
        case FamilyName::quadric_3fold: return "quadric_3fold";
        case FamilyName::custom: return "custom";
    }
    return "?";
}

std::optional<FamilyName> family_name_from_string(const std::string& s) {
    for (FamilyName n : {FamilyName::a_n_curve, FamilyName::a_n_surface,
                         FamilyName::a_n_threefold, FamilyName::quadric_3fold,
                         FamilyName::custom})
        if (family_name_string(n) == s) return n;
    return std::nullopt;
}

namespace {

std::string field_string(const CoefficientField& k) {
    return k.kind() == FieldKind::rationals ? "rational"
                                            : "prime:" + std::to_string(k.characteristic());
}

FreeMap matrix2(RingPtr Q, const Polynomial& a, const Polynomial& b, const Polynomial& c,
                const Polynomial& d) {
    FreeMap m(Q, 2, 2);
    m.set_entry(0, 0, a);
    m.set_entry(0, 1, b);
    m.set_entry(1, 0, c);
    m.set_entry(1, 1, d);
    return m;
}

Family finish_family(Family fam) {
    fam.singularity = jacobian_check(fam.ring->f());
    fam.prediction = vanishing_predicted(fam.singularity);
    for (std::size_t i = 0; i < fam.factorizations.size(); ++i) {
        std::string label = "coker(A" + std::to_string(i + 1) + ")";
        fam.modules.push_back(fam.factorizations[i].cokernel(label));
    }
    return fam;
}

Family build_a_n_curve(const FamilySpec& spec) {
    if (spec.n < 1) throw InvalidParameter("a_n_curve needs n >= 1");
    auto Q = PolyRing::make(spec.field, {"x", "y"});
    Polynomial x = Polynomial::variable(Q, 0), y = Polynomial::variable(Q, 1);
    std::uint32_t e = static_cast<std::uint32_t>(spec.n) + 1;
    Family fam;
    fam.label = "a_n_curve";
    fam.n = spec.n;
    fam.ring = HypersurfaceRing::make(x.pow(e) - y * y);
    for (std::uint32_t j = 1; j <= static_cast<std::uint32_t>(spec.n); ++j) {
        fam.factorizations.emplace_back(
            fam.ring, matrix2(Q, x.pow(j), y, y, x.pow(e - j)),
            matrix2(Q, x.pow(e - j), -y, -y, x.pow(j)));
    }
    if (spec.n % 2 == 1) {
        // Odd n: x^{n+1} - y^2 splits as a rational difference of squares.
        Polynomial h = x.pow(e / 2);
        FreeMap a(Q, 1, 1), b(Q, 1, 1);
        a.set_entry(0, 0, h - y);
        b.set_entry(0, 0, h + y);
        fam.factorizations.emplace_back(fam.ring, a, b);
    }
    return finish_family(std::move(fam));
}

Family build_a_n_surface(const FamilySpec& spec) {
    if (spec.n < 1) throw InvalidParameter("a_n_surface needs n >= 1");
    auto Q = PolyRing::make(spec.field, {"x", "y", "z"});
    Polynomial x = Polynomial::variable(Q, 0), y = Polynomial::variable(Q, 1),
               z = Polynomial::variable(Q, 2);
    std::uint32_t e = static_cast<std::uint32_t>(spec.n) + 1;
    Family fam;
    fam.label = "a_n_surface";
    fam.n = spec.n;
    fam.ring = HypersurfaceRing::make(x.pow(e) - y * z);
    for (std::uint32_t j = 1; j <= static_cast<std::uint32_t>(spec.n); ++j) {
        fam.factorizations.emplace_back(
            fam.ring, matrix2(Q, x.pow(j), y, z, x.pow(e - j)),
            matrix2(Q, x.pow(e - j), -y, -z, x.pow(j)));
    }
    return finish_family(std::move(fam));
}

Family build_a_n_threefold(const FamilySpec& spec) {
    if (spec.n < 1) throw InvalidParameter("a_n_threefold needs n >= 1");
    Family surface = build_a_n_surface(spec);
    Family fam;
    fam.label = "a_n_threefold";
    fam.n = spec.n;
    // One-variable doubling of the surface factorizations gives
    // factorizations of x^{n+1} - y*z + w^2.
    for (const auto& mfs : surface.factorizations) {
        std::uint32_t m = mfs.size();
        auto Q4 = PolyRing::make(spec.field, {"x", "y", "z", "w"});
        std::vector<std::size_t> var_map = {0, 1, 2};
        Polynomial w = Polynomial::variable(Q4, 3);
        auto up = [&](const FreeMap& src) {
            FreeMap out(Q4, m, m);
            for (std::uint32_t i = 0; i < m; ++i)
                for (std::uint32_t j = 0; j < m; ++j)
                    out.set_entry(i, j, transplant(src.entry(i, j), Q4, var_map));
            return out;
        };
        FreeMap A = up(mfs.a()), B = up(mfs.b());
        FreeMap wI = FreeMap::identity(Q4, m).scale(w);
        auto corner = [&](const FreeMap& tl, const FreeMap& br) {
            FreeMap out(Q4, 2 * m, 2 * m);
            for (std::uint32_t i = 0; i < m; ++i)
                for (std::uint32_t j = 0; j < m; ++j) {
                    out.set_entry(i, j, tl.entry(i, j));
                    out.set_entry(i, m + j, wI.entry(i, j));
                    out.set_entry(m + i, j, wI.entry(i, j));
                    out.set_entry(m + i, m + j, -br.entry(i, j));
                }
            return out;
        };
        if (!fam.ring) {
            Polynomial f4 = transplant(mfs.ring()->f(), Q4, var_map) + w * w;
            fam.ring = HypersurfaceRing::make(std::move(f4));
        }
        fam.factorizations.emplace_back(fam.ring, corner(A, B), corner(B, A));
    }
    return finish_family(std::move(fam));
}

Family build_quadric_3fold(const FamilySpec& spec) {
    auto Q = PolyRing::make(spec.field, {"x", "y", "z", "w"});
    Polynomial x = Polynomial::variable(Q, 0), y = Polynomial::variable(Q, 1),
               z = Polynomial::variable(Q, 2), w = Polynomial::variable(Q, 3);
    Family fam;
    fam.label = "quadric_3fold";
    fam.n = 1;
    fam.ring = HypersurfaceRing::make(x * y - z * w);
    MatrixFactorization mf(fam.ring, matrix2(Q, x, z, w, y), matrix2(Q, y, -z, -w, x));
    fam.factorizations.push_back(mf);
    fam.factorizations.push_back(mf.transpose());
    return finish_family(std::move(fam));
}

Family build_custom(const FamilySpec& spec) {
    if (!spec.custom) throw InvalidParameter("custom family needs payload data");
    const CustomFamilyData& data = *spec.custom;
    auto Q = PolyRing::make(spec.field, data.variables);
    Family fam;
    fam.label = data.label.empty() ? "custom" : data.label;
    fam.n = spec.n;
    fam.ring = HypersurfaceRing::make(parse_poly(data.f, Q));
    auto parse_matrix = [&](const std::vector<std::vector<std::string>>& rows) {
        std::uint32_t r = static_cast<std::uint32_t>(rows.size());
        std::uint32_t c = r ? static_cast<std::uint32_t>(rows[0].size()) : 0;
        FreeMap m(Q, r, c);
        for (std::uint32_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw InvalidParameter("ragged matrix in family data");
            for (std::uint32_t j = 0; j < c; ++j)
                m.set_entry(i, j, parse_poly(rows[i][j], Q));
        }
        return m;
    };
    for (const auto& [arows, brows] : data.mfs)
        fam.factorizations.emplace_back(fam.ring, parse_matrix(arows), parse_matrix(brows));
    return finish_family(std::move(fam));
}

}  // namespace

Family build_family(const FamilySpec& spec) {
    Family fam = [&] {
        switch (spec.name) {
            case FamilyName::a_n_curve: return build_a_n_curve(spec);
            case FamilyName::a_n_surface: return build_a_n_surface(spec);
            case FamilyName::a_n_threefold: return build_a_n_threefold(spec);
            case FamilyName::quadric_3fold: return build_quadric_3fold(spec);
            case FamilyName::custom: return build_custom(spec);
        }
        throw InvalidParameter("unknown family");
    }();
    // Every bundled family has an isolated singularity at the origin.
    if (spec.name != FamilyName::custom && !fam.singularity.isolated_at_origin)
        throw InternalError("bundled family " + fam.label + " is not isolated at the origin");
    return fam;
}

FamilySpec node_family_spec(CoefficientField field) {
    FamilySpec spec;
    spec.name = FamilyName::custom;
    spec.n = 1;
    spec.field = field;
    spec.custom = CustomFamilyData{
        "node", {"x", "y"}, "x*y", {{{{"x"}}, {{"y"}}}, {{{"y"}}, {{"x"}}}}};
    return spec;
}

void check_conformance(const SweepRecord& record) {
    if (record.predicted_vanishing && record.theta != 0)
        throw ConformanceViolation("family " + record.family + " pair " + record.pair +
                                   " predicted theta = 0 but computed " +
                                   std::to_string(record.theta));
}

SweepResult run_sweep(const SweepConfig& config) {
    SweepResult result;
    for (const auto& spec : config.families) {
        Family fam = build_family(spec);
        for (std::size_t i = 0; i < fam.modules.size(); ++i) {
            for (std::size_t j = 0; j < fam.modules.size(); ++j) {
                auto t0 = std::chrono::steady_clock::now();
                ThetaReport rep = theta(fam.modules[i], fam.modules[j], config.options);
                auto t1 = std::chrono::steady_clock::now();
                SweepRecord rec;
                rec.family = fam.label;
                rec.n = fam.n;
                rec.field = field_string(spec.field);
                rec.pair = fam.modules[i].label() + ":" + fam.modules[j].label();
                rec.theta = rep.value;
                rec.len_even = rep.even_length;
                rec.len_odd = rep.odd_length;
                rec.stab_index = rep.stabilization_index;
                rec.predicted_vanishing = fam.prediction.predicted;
                rec.millis =
                    std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
                check_conformance(rec);
                result.records.push_back(std::move(rec));
            }
        }
    }

    // FNV-1a over the timing-free row images.
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& r : result.records) {
        feed(r.family + "," + std::to_string(r.n) + "," + r.field + "," + r.pair + "," +
             std::to_string(r.theta) + "," + std::to_string(r.len_even) + "," +
             std::to_string(r.len_odd) + "," + std::to_string(r.stab_index) + "," +
             (r.predicted_vanishing ? "true" : "false") + "\n");
    }
    std::ostringstream os;
    os << std::hex << h;
    result.determinism_hash = os.str();
    return result;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << "family,n,field,pair,theta,len_even,len_odd,stab_index,predicted_vanishing,millis\n";
    for (const auto& r : records)
        os << r.family << "," << r.n << "," << r.field << "," << r.pair << "," << r.theta
           << "," << r.len_even << "," << r.len_odd << "," << r.stab_index << ","
           << (r.predicted_vanishing ? "true" : "false") << "," << r.millis << "\n";
    return os.str();
}

BiadditivityResult biadditivity_audit(const RModulePresentation& M1,
                                      const RModulePresentation& M2,
                                      const RModulePresentation& N,
                                      const ThetaOptions& opts) {
    BiadditivityResult r;
    r.theta_sum = theta(RModulePresentation::direct_sum(M1, M2), N, opts).value;
    r.theta_first = theta(M1, N, opts).value;
    r.theta_second = theta(M2, N, opts).value;
    r.pass = (r.theta_sum == r.theta_first + r.theta_second);
    return r;
}

}  // namespace htheta
