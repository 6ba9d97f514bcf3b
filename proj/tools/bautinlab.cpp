// bautinlab: exact coefficient-matrix invariants of analytic series, the
// closed-form zero-count bounds built from them, a certified disc zero
// counter, and a bounded-height rational point scanner.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bautinlab/bautin.hpp"
#include "bautinlab/bounds.hpp"
#include "bautinlab/diophantine.hpp"
#include "bautinlab/generators.hpp"
#include "bautinlab/json_io.hpp"
#include "bautinlab/parallel.hpp"
#include "bautinlab/zero_oracle.hpp"

namespace bl = bautinlab;
using bl::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 0 ok, 2 validation, 3 precision/truncation (retryable),
// 4 structured stalled/inconclusive outcome
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kPrecision = 3;
constexpr int kInconclusive = 4;

struct Output {
    std::string out_path;
    std::string manifest_path;
    std::vector<std::string> argv;

    void emit(const Json& j) const {
        std::string text = j.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
            f << text;
        }
        write_manifest();
    }

    void write_manifest() const {
        if (manifest_path.empty()) return;
        Json m;
        m["tool"] = "bautinlab";
        m["version"] = kVersion;
        m["argv"] = argv;
        m["out"] = out_path;
        m["threads"] = bl::worker_count();
        auto now = std::chrono::system_clock::now().time_since_epoch();
        m["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
        std::ofstream f(manifest_path);
        if (!f) throw std::invalid_argument("cannot open manifest file: " + manifest_path);
        f << m.dump(2) << "\n";
    }
};

bl::UPoly poly_from_csv(const std::string& csv) {
    std::vector<bl::Rat> c;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(bl::parse_rat(item));
    return bl::UPoly(std::move(c));
}

std::vector<long> longs_from_csv(const std::string& csv) {
    std::vector<long> v;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stol(item));
    return v;
}

int auto_truncation(const bl::ExactSeries& f, long T) {
    // the separation precondition needs tail < 1/(2T^2); genuine near-misses
    // of the scanned values sit far below that, so aim well past it
    bl::Rat target = bl::make_rat(bl::Int(1), 32 * bl::Int(T) * bl::Int(T));
    for (int N = std::min(64, f.order());; N = std::min(2 * N, f.order())) {
        if (bl::tail_bound(f, N, bl::make_rat(1, 4)) < target) return N;
        if (N == f.order()) break;
    }
    throw bl::PrecisionError("stored coefficients cannot separate height " + std::to_string(T) +
                             "; supply a longer series");
}

bl::LacunarySpec lacunary_spec_from_flags(const std::string& exponents, const std::string& rule,
                                          long start, int terms, const std::string& coeffs,
                                          const std::string& first, const std::string& ratio,
                                          const std::string& q, const std::string& p) {
    bl::LacunarySpec spec;
    if (!exponents.empty())
        spec.exponents = longs_from_csv(exponents);
    else if (rule == "square-plus-one")
        spec.exponents = bl::lacunary_rule_square_plus_one(start, terms);
    else
        throw std::invalid_argument("lacunary: give --exponents or --rule square-plus-one");
    if (!coeffs.empty()) {
        spec.coeff_kind = bl::LacunarySpec::CoeffKind::Explicit;
        std::stringstream ss(coeffs);
        std::string item;
        while (std::getline(ss, item, ',')) spec.coeff_list.push_back(bl::parse_rat(item));
    } else {
        spec.coeff_kind = bl::LacunarySpec::CoeffKind::Geometric;
        spec.coeff_first = bl::parse_rat(first);
        spec.coeff_ratio = bl::parse_rat(ratio);
    }
    if (!q.empty()) spec.gap_upper = bl::parse_rat(q);
    if (!p.empty()) spec.decay = bl::parse_rat(p);
    return spec;
}

bl::RecurrenceSpec recurrence_from_json(const Json& j) {
    bl::RecurrenceSpec spec;
    spec.length = j.at("length").get<int>();
    if (j.contains("shift")) spec.shift = j.at("shift").get<int>();
    for (const auto& t : j.at("terms")) {
        bl::RecurrenceTerm term;
        term.exps = t.at("exps").get<std::vector<int>>();
        for (const auto& c : t.at("invk")) term.invk.push_back(bl::rat_from_json(c));
        spec.terms.push_back(std::move(term));
    }
    for (const auto& a : j.at("initial")) spec.initial.push_back(bl::rat_from_json(a));
    spec.validate();
    return spec;
}

bl::ExactSeries series_from_sweep_entry(const Json& e) {
    std::string kind = e.at("kind").get<std::string>();
    if (kind == "file") return bl::series_from_file(e.at("path").get<std::string>());
    if (kind == "random") {
        bl::RandomSpec rs{e.at("seed").get<std::uint64_t>(), e.value("trunc", 64)};
        bl::ExactSeries f = bl::sample_random(rs);
        if (e.value("rescale", true)) f = bl::rescale_half(f);
        return f;
    }
    if (kind == "lacunary") {
        bl::LacunarySpec spec;
        for (const auto& n : e.at("exponents")) spec.exponents.push_back(n.get<long>());
        spec.coeff_first = bl::rat_from_json(e.value("coeff_first", Json("1/2")));
        spec.coeff_ratio = bl::rat_from_json(e.value("coeff_ratio", Json("1/2")));
        return bl::gen_lacunary(spec, e.value("trunc", 256));
    }
    if (kind == "recurrence") return bl::gen_recurrence(recurrence_from_json(e), e.value("trunc", 128)).series;
    throw std::invalid_argument("sweep: unknown series kind " + kind);
}

// maximal (or heuristic) nonzero full-size minor of the stabilized matrix
bl::MinorResult exact_delta(const bl::ExactSeries& f, const bl::BautinReport& rep,
                            const bl::MonomialFamily& fam, bl::MinorMode mode, std::uint64_t budget) {
    int b = *rep.index;
    auto table = bl::power_table(f, fam.degree, b);
    auto bm = bl::build_bautin_matrix(table, fam, b);
    return bl::max_nonzero_minor(bm, fam.size(), mode, budget);
}

int cmd_series(const Output& out, const std::string& path, int profile_cap) {
    bl::ExactSeries f = bl::series_from_file(path);
    Json j;
    j["order"] = f.order();
    j["radius"] = bl::rat_to_json(f.radius);
    j["bound"] = bl::rat_to_json(f.bound);
    j["origin_value_zero"] = f.origin_value_zero;
    auto viol = f.cauchy_violation();
    j["cauchy_ok"] = !viol.has_value();
    if (viol) j["cauchy_violation_at"] = *viol;
    if (profile_cap > 0) {
        auto pr = bl::height_profile(f, std::min(profile_cap, f.order()));
        Json h = Json::array(), theta = Json::array();
        for (int l = 1; l <= pr.cap(); ++l) {
            h.push_back(pr.h(l).get_str());
            theta.push_back(pr.theta(l));
        }
        j["height_profile"] = Json{{"h", h}, {"theta", theta}};
    }
    out.emit(j);
    return kOk;
}

int cmd_bautin(const Output& out, const std::string& path, const std::string& family, int degree,
               int trunc, const std::string& mode_name, std::uint64_t budget, bool with_witness,
               bool total_family_alias, bool with_matrix) {
    bl::ExactSeries f = bl::series_from_file(path);
    bl::MonomialFamily fam = bl::parse_family(total_family_alias ? "total" : family, degree);
    int cutoff = trunc > 0 ? trunc : std::min(4 * fam.size(), f.order());
    auto rep = bl::bautin_index(f, fam, cutoff);
    Json j = bl::bautin_report_to_json(rep);
    if (with_matrix) {
        int rows = rep.stalled() ? rep.rows_examined : *rep.index;
        auto table = bl::power_table(f, fam.degree, rows);
        auto bm = bl::build_bautin_matrix(table, fam, rows);
        Json m = Json::array();
        for (int i = 0; i < bm.m.rows; ++i) {
            Json row = Json::array();
            for (int c = 0; c < bm.m.cols; ++c) row.push_back(bl::rat_to_json(bm.m.at(i, c)));
            m.push_back(std::move(row));
        }
        j["matrix"] = std::move(m);
    }
    if (!rep.stalled()) {
        bl::MinorMode mode = mode_name == "heuristic" ? bl::MinorMode::HeuristicNonzero
                                                      : bl::MinorMode::ExhaustiveMax;
        j["delta"] = bl::minor_to_json(exact_delta(f, rep, fam, mode, budget));
        if (with_witness) {
            auto w = bl::witness_polynomial(f, fam, cutoff);
            Json lam = Json::array();
            for (const auto& c : w.lambda) lam.push_back(bl::rat_to_json(c));
            j["witness"] = Json{{"lambda", lam}, {"multiplicity", w.multiplicity}};
        }
    }
    out.emit(j);
    return rep.stalled() ? kInconclusive : kOk;
}

int cmd_delta(const Output& out, const std::string& path, int degree) {
    bl::ExactSeries f = bl::series_from_file(path);
    bl::Rat d = bl::bautin_determinant(f, degree);
    Json j;
    j["degree"] = degree;
    j["Delta"] = bl::rat_to_json(d);
    out.emit(j);
    return kOk;
}

int cmd_eta(const Output& out, const std::string& path, int degree, int base_order, int max_base_order) {
    bl::ExactSeries f = bl::series_from_file(path);
    int ku = base_order > 0 ? base_order : degree * degree + 2 * degree;
    int cap = std::max(max_base_order, ku);
    Json attempts = Json::array();
    for (;; ku = std::min(2 * ku, cap)) {
        auto res = bl::bautin_multiplicity(f, degree, ku);
        attempts.push_back(ku);
        if (res.status == bl::EtaResult::Status::Found) {
            Json j;
            j["degree"] = degree;
            j["eta"] = res.eta;
            j["alpha"] = bl::rat_to_json(res.leading);
            j["base_order"] = ku;
            j["attempted_base_orders"] = attempts;
            out.emit(j);
            return kOk;
        }
        if (ku >= cap) {
            Json j;
            j["degree"] = degree;
            j["status"] = res.det_poly_zero ? "identically zero up to the cap" : "exceeds the cap";
            j["base_order_cap"] = cap;
            j["attempted_base_orders"] = attempts;
            out.emit(j);
            return kInconclusive;
        }
    }
}

int cmd_bounds(const Output& out, const std::string& formula, long b, long sigma, long d, long nu,
               long md, long qd, const std::string& c, const std::string& B, const std::string& R,
               const std::string& delta, const std::string& h, long theta, const std::string& q,
               const std::string& p, const std::string& phat, const std::string& T,
               const std::string& K, const std::string& Rpoly, const std::string& Spoly,
               const std::string& Zpoly, const std::string& Qpoly, int precision) {
    mpfr_prec_t prec = precision > 0 ? static_cast<mpfr_prec_t>(precision * 3.33) + 16 : 200;
    auto rat = [](const std::string& s, const char* def) { return bl::parse_rat(s.empty() ? def : s); };
    Json j;
    if (formula == "zero_bound_disc") {
        j = bl::bound_report_to_json(bl::zero_bound_disc(b, rat(c, "1"), rat(B, "1"), rat(R, "1"), prec));
    } else if (formula == "small_disc_radius") {
        j = bl::bound_report_to_json(bl::small_disc_radius(b, rat(c, "1"), rat(B, "1"), rat(R, "1"), prec));
    } else if (formula == "c_bound") {
        j = bl::bound_report_to_json(bl::c_bound(sigma, rat(B, "1"), rat(R, "1"), b, rat(delta, "1"), prec));
    } else if (formula == "z_bound_unit") {
        j = bl::bound_report_to_json(bl::z_bound_unit(b, sigma, rat(delta, "1"), prec));
    } else if (formula == "z_bound_general") {
        j = bl::bound_report_to_json(bl::z_bound_general(d, b, rat(delta, "1"), prec));
    } else if (formula == "delta_lower_rational") {
        std::optional<long> th;
        if (theta > 0) th = theta;
        j = bl::bound_report_to_json(
            bl::delta_lower_rational(d, nu, bl::parse_int(h.empty() ? "1" : h), th, prec));
    } else if (formula == "composite_T") {
        j = bl::bound_report_to_json(bl::composite_T(d, poly_from_csv(Rpoly), poly_from_csv(Spoly), prec));
    } else if (formula == "lacunary") {
        auto lb = bl::lacunary_bounds(d, rat(q, "3"), p.empty() ? std::nullopt : std::optional<bl::Rat>(bl::parse_rat(p)), prec);
        j["nu_bound"] = bl::bound_report_to_json(lb.nu);
        if (lb.zeros) j["zero_bound"] = bl::bound_report_to_json(*lb.zeros);
    } else if (formula == "random_epsilon") {
        j = bl::bound_report_to_json(bl::random_epsilon(d, rat(phat, "1/2"), md, qd, prec));
    } else if (formula == "rational_point_bound") {
        auto rb = bl::rational_point_bound(rat(T, "3"), poly_from_csv(Zpoly), rat(K, "1"),
                                           Qpoly.empty() ? bl::UPoly(bl::Rat(1)) : poly_from_csv(Qpoly), prec);
        j = bl::bound_report_to_json(rb.report);
        j["alpha"] = rb.alpha;
        j["beta"] = bl::rat_str(rb.beta);
        j["floor_log_T"] = rb.log_floor;
    } else {
        throw std::invalid_argument("unknown bound formula: " + formula);
    }
    out.emit(j);
    return kOk;
}

int cmd_lacunary(const Output& out, const bl::LacunarySpec& spec, int trunc, int degree) {
    Json j;
    bl::ExactSeries f = bl::gen_lacunary(spec, trunc);
    j["series"] = bl::series_to_json(f);
    j["exponents"] = spec.exponents;
    if (degree > 0) {
        auto s = bl::lacunary_nu_sandwich(spec, degree);
        j["nu_sandwich"] = Json{{"lower", s.lower}, {"upper", s.upper}, {"l", s.l}};
        auto m = bl::lacunary_minor_closed_form(spec, degree);
        j["closed_form_minor"] = Json{{"value", bl::rat_to_json(m.value)},
                                      {"rows", m.row_set},
                                      {"upper_square", m.upper_square}};
    }
    out.emit(j);
    return kOk;
}

int cmd_recur(const Output& out, const std::string& config_path, int trunc, int bound_at) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open recurrence config: " + config_path);
    auto spec = recurrence_from_json(Json::parse(in));
    auto res = bl::gen_recurrence(spec, trunc);
    Json j;
    j["series"] = bl::series_to_json(res.series);
    Json dens = Json::array();
    for (const auto& dk : res.denominators) dens.push_back(dk.get_str());
    j["denominators"] = std::move(dens);
    if (bound_at > 0) {
        auto b = bl::denominator_bound(spec, bound_at, res.denominators);
        j["denominator_bound"] = bl::bound_report_to_json(b.report);
        j["bound_holds"] =
            bl::denominator_bound_holds(b, res.denominators[static_cast<size_t>(bound_at)]);
    }
    out.emit(j);
    return kOk;
}

int cmd_random(const Output& out, std::uint64_t seed, int trunc, bool rescale, int batch) {
    auto one = [&](std::uint64_t s) {
        bl::ExactSeries f = bl::sample_random(bl::RandomSpec{s, trunc});
        if (rescale) f = bl::rescale_half(f);
        Json j;
        j["seed"] = s;
        j["rescaled"] = rescale;
        j["series"] = bl::series_to_json(f);
        return j;
    };
    if (batch <= 1) {
        out.emit(one(seed));
        return kOk;
    }
    Json records = Json::array();
    for (int i = 0; i < batch; ++i) records.push_back(one(seed + static_cast<std::uint64_t>(i)));
    Json j;
    j["records"] = std::move(records);
    out.emit(j);
    return kOk;
}

int cmd_zeros(const Output& out, const std::string& series_path, const std::string& poly_path,
              const std::string& radius, int trunc, int panels) {
    bl::ExactSeries f = bl::series_from_file(series_path);
    std::ifstream in(poly_path);
    if (!in) throw std::invalid_argument("cannot open polynomial file: " + poly_path);
    auto P = bl::curve_poly_from_json(Json::parse(in));
    auto zc = bl::count_zeros_disc(P, f, bl::parse_rat(radius), trunc, panels);
    out.emit(bl::zero_count_to_json(zc));
    return zc.certified() ? kOk : kInconclusive;
}

int cmd_ratpoints(const Output& out, const std::string& series_path, long height_cap, int trunc,
                  const std::string& csv_path) {
    bl::ExactSeries f = bl::series_from_file(series_path);
    int N = trunc > 0 ? trunc : auto_truncation(f, height_cap);
    auto rep = bl::scan_graph_points(f, height_cap, N);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::invalid_argument("cannot open csv file: " + csv_path);
        csv << "x_num,x_den,status,y_if_any,margin\n";
        bl::SeriesEvaluator ev = bl::SeriesEvaluator::prepare(f, N);
        for (long q = 1; q <= height_cap; ++q) {
            long pmax = q / 4;
            for (long p = -pmax; p <= pmax; ++p) {
                if (bl::int_gcd(bl::Int(p), bl::Int(q)) != 1) continue;
                bl::Rat x = bl::make_rat(p, q);
                if (bl::rat_abs(x) > bl::make_rat(1, 4)) continue;
                auto pt = bl::scan_point(f, ev, bl::Int(height_cap), x);
                const char* status = pt.status == bl::PointStatus::CertifiedMember ? "certified"
                                     : pt.status == bl::PointStatus::Excluded     ? "excluded"
                                                                                  : "unresolved";
                csv << p << "," << q << "," << status << "," << bl::rat_str(pt.y) << ","
                    << bl::rat_double(pt.margin) << "\n";
            }
        }
    }
    Json j = bl::scan_report_to_json(rep);
    Json summary;
    summary["T"] = height_cap;
    summary["certified"] = rep.certified.size();
    summary["excluded"] = rep.excluded;
    summary["unresolved"] = rep.unresolved.size();
    summary["N"] = N;
    j["summary"] = std::move(summary);
    out.emit(j);
    return kOk;
}

int cmd_sweep(const Output& out, const std::string& config_path, const std::string& csv_path) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open sweep config: " + config_path);
    Json cfg = Json::parse(in);
    std::ostringstream csv;
    csv << "experiment,series,d,seed,Delta,eps_d,passes,b,delta,bound,max_count,certified,status\n";
    Json summary;

    if (cfg.contains("random_delta")) {
        const Json& rc = cfg["random_delta"];
        bl::Rat phat = bl::rat_from_json(rc.value("phat", Json("1/2")));
        long seeds = rc.value("seeds", 200);
        Json fractions = Json::object();
        for (int d : rc.at("degrees").get<std::vector<int>>()) {
            long m_d = static_cast<long>(d) * d + d;
            long q_d = static_cast<long>(d) * (d + 1) * (d + 1) / 2;
            auto eps = bl::random_epsilon(d, phat, m_d, q_d);
            bl::Real eps_up = bl::random_epsilon_real(d, phat, m_d, q_d, 200, MPFR_RNDU);
            long passes = 0;
            std::vector<std::string> rows(static_cast<size_t>(seeds));
            std::vector<int> pass_flags(static_cast<size_t>(seeds), 0);
            bl::parallel_for(seeds, [&](long s) {
                bl::RandomSpec spec{static_cast<std::uint64_t>(s), d * d + 2 * d};
                bl::ExactSeries f = bl::sample_random(spec);
                bl::Rat delta = bl::rat_abs(bl::bautin_determinant(f, d));
                // |Delta| >= eps, against the up-rounded threshold
                bool pass = delta != 0 && mpfr_cmp_q(eps_up.get(), delta.get_mpq_t()) <= 0;
                std::ostringstream row;
                row << "random_delta,," << d << "," << s << "," << bl::rat_double(delta) << ","
                    << eps.value << "," << (pass ? 1 : 0) << ",,,,,,ok";
                rows[static_cast<size_t>(s)] = row.str();
                pass_flags[static_cast<size_t>(s)] = pass ? 1 : 0;
            });
            for (long s = 0; s < seeds; ++s) {
                csv << rows[static_cast<size_t>(s)] << "\n";
                passes += pass_flags[static_cast<size_t>(s)];
            }
            double fraction = static_cast<double>(passes) / static_cast<double>(seeds);
            double threshold = bl::rat_double(phat) -
                               3 * std::sqrt(bl::rat_double(phat) * (1 - bl::rat_double(phat)) /
                                             static_cast<double>(seeds));
            fractions[std::to_string(d)] =
                Json{{"fraction", fraction}, {"threshold", threshold}, {"ok", fraction >= threshold}};
        }
        summary["random_delta"] = std::move(fractions);
    }

    if (cfg.contains("domination")) {
        const Json& dc = cfg["domination"];
        bl::Rat radius = bl::rat_from_json(dc.value("radius", Json("1/4")));
        int trials = dc.value("trials", 5);
        Json cells = Json::array();
        bool all_ok = true;
        for (const auto& entry : dc.at("series")) {
            std::string id = entry.value("id", std::string("series"));
            bl::ExactSeries f = series_from_sweep_entry(entry);
            for (int d : dc.at("degrees").get<std::vector<int>>()) {
                bl::MonomialFamily fam = bl::MonomialFamily::square(d);
                std::string status = "ok";
                try {
                    int cutoff = std::min(4 * fam.size(), f.order());
                    auto rep = bl::bautin_index(f, fam, cutoff);
                    if (rep.stalled()) {
                        csv << "domination," << id << "," << d << ",,,,,,,,,," << "stalled\n";
                        cells.push_back(Json{{"series", id}, {"d", d}, {"status", "stalled"}});
                        continue;
                    }
                    auto minor = exact_delta(f, rep, fam, bl::MinorMode::ExhaustiveMax, 200000);
                    auto bound = bl::z_bound_unit(*rep.index, fam.size(), minor.value);
                    auto emp = bl::empirical_Z(f, d, trials, radius);
                    double bound_val = std::strtod(bound.value.c_str(), nullptr);
                    bool ok = emp.max_count <= bound_val;
                    all_ok = all_ok && ok;
                    csv << "domination," << id << "," << d << ",,,,," << *rep.index << ","
                        << bl::rat_double(minor.value) << "," << bound.value << "," << emp.max_count
                        << "," << emp.certified_samples << "," << (ok ? "ok" : "VIOLATION") << "\n";
                    cells.push_back(Json{{"series", id},
                                         {"d", d},
                                         {"b", *rep.index},
                                         {"bound", bound.value},
                                         {"max_count", emp.max_count},
                                         {"certified_samples", emp.certified_samples},
                                         {"ok", ok}});
                } catch (const std::exception& e) {
                    csv << "domination," << id << "," << d << ",,,,,,,,,," << "error\n";
                    cells.push_back(Json{{"series", id}, {"d", d}, {"status", std::string(e.what())}});
                }
            }
        }
        summary["domination"] = Json{{"cells", cells}, {"all_ok", all_ok}};
    }

    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw std::invalid_argument("cannot open csv file: " + csv_path);
        f << csv.str();
    }
    out.emit(summary);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact transcendence invariants, zero-count bounds, and certified zero counting"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Output out;
    for (int i = 0; i < argc; ++i) out.argv.push_back(argv[i]);

    std::string series_path, family = "square", mode = "exhaustive";
    int degree = 1, trunc = 0, profile = 0, panels = 256;
    std::uint64_t budget = 1000000, seed = 0;
    bool with_witness = false, rescale = false, with_matrix = false;
    long height_cap = 50;
    std::string radius = "1/4", poly_path, csv_path, config_path;

    std::string formula, c_s, B_s, R_s, delta_s, h_s, q_s, p_s, phat_s, T_s, K_s;
    std::string Rpoly_s, Spoly_s, Zpoly_s, Qpoly_s;
    long b_l = 1, sigma_l = 1, d_l = 1, nu_l = 1, md_l = 1, qd_l = 1, theta_l = 0;
    int precision = 0;

    std::string lac_exponents, lac_rule, lac_coeffs, lac_first = "1/2", lac_ratio = "1/2";
    long lac_start = 2;
    int lac_terms = 4;
    int base_order = 0, max_base_order = 0, bound_at = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out.out_path, "write the JSON result to this path");
        sub->add_option("--manifest", out.manifest_path, "write a reproducibility manifest");
    };

    auto* sc_series = app.add_subcommand("series", "validate a series file and profile it");
    sc_series->add_option("--series", series_path)->required();
    sc_series->add_option("--profile", profile, "height profile cap");
    add_common(sc_series);

    auto* sc_bautin = app.add_subcommand("bautin", "stabilization index, rank trace, maximal minor");
    sc_bautin->add_option("--series", series_path)->required();
    sc_bautin->add_option("--family", family)->check(CLI::IsMember({"square", "total"}));
    sc_bautin->add_option("--degree", degree)->required();
    sc_bautin->add_option("--trunc", trunc, "row cutoff (default 4m)");
    sc_bautin->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "heuristic"}));
    sc_bautin->add_option("--budget", budget, "exhaustive minor enumeration budget");
    sc_bautin->add_flag("--witness", with_witness, "include the kernel witness");
    sc_bautin->add_flag("--matrix", with_matrix, "include the coefficient matrix");
    add_common(sc_bautin);

    auto* sc_nu = app.add_subcommand("nu", "transcendence index (total-degree family)");
    sc_nu->add_option("--series", series_path)->required();
    sc_nu->add_option("--degree", degree)->required();
    sc_nu->add_option("--trunc", trunc);
    add_common(sc_nu);

    auto* sc_delta = app.add_subcommand("delta", "determinant of the square power-block matrix");
    sc_delta->add_option("--series", series_path)->required();
    sc_delta->add_option("--degree", degree)->required();
    add_common(sc_delta);

    auto* sc_eta = app.add_subcommand("eta", "vanishing order of the recentered determinant");
    sc_eta->add_option("--series", series_path)->required();
    sc_eta->add_option("--degree", degree)->required();
    sc_eta->add_option("--base-order", base_order, "starting truncation in the base point");
    sc_eta->add_option("--max-base-order", max_base_order, "doubling cap");
    add_common(sc_eta);

    auto* sc_bounds = app.add_subcommand("bounds", "evaluate a closed-form bound");
    sc_bounds->add_option("--formula", formula)->required();
    sc_bounds->add_option("--b", b_l);
    sc_bounds->add_option("--sigma", sigma_l);
    sc_bounds->add_option("--d", d_l);
    sc_bounds->add_option("--nu", nu_l);
    sc_bounds->add_option("--md", md_l);
    sc_bounds->add_option("--qd", qd_l);
    sc_bounds->add_option("--theta", theta_l);
    sc_bounds->add_option("--c", c_s);
    sc_bounds->add_option("--B", B_s);
    sc_bounds->add_option("--R", R_s);
    sc_bounds->add_option("--delta", delta_s);
    sc_bounds->add_option("--hl", h_s, "height value h_l");
    sc_bounds->add_option("--q", q_s);
    sc_bounds->add_option("--p", p_s);
    sc_bounds->add_option("--phat", phat_s);
    sc_bounds->add_option("--T", T_s);
    sc_bounds->add_option("--K", K_s);
    sc_bounds->add_option("--Rpoly", Rpoly_s, "comma coefficients, ascending");
    sc_bounds->add_option("--Spoly", Spoly_s);
    sc_bounds->add_option("--Zpoly", Zpoly_s);
    sc_bounds->add_option("--Qpoly", Qpoly_s);
    sc_bounds->add_option("--precision", precision, "decimal digits of working precision");
    add_common(sc_bounds);

    auto* sc_lac = app.add_subcommand("lacunary", "generate a gap series and its closed forms");
    sc_lac->add_option("--exponents", lac_exponents, "comma list n_1,n_2,...");
    sc_lac->add_option("--rule", lac_rule)->check(CLI::IsMember({"square-plus-one"}));
    sc_lac->add_option("--start", lac_start);
    sc_lac->add_option("--terms", lac_terms);
    sc_lac->add_option("--coeffs", lac_coeffs, "explicit comma coefficients");
    sc_lac->add_option("--coeff-first", lac_first);
    sc_lac->add_option("--coeff-ratio", lac_ratio);
    sc_lac->add_option("--q", q_s, "upper gap exponent");
    sc_lac->add_option("--p", p_s, "coefficient decay exponent");
    sc_lac->add_option("--trunc", trunc)->required();
    sc_lac->add_option("--degree", degree, "report sandwich and closed-form minor");
    add_common(sc_lac);

    auto* sc_recur = app.add_subcommand("recur", "iterate a coefficient recurrence exactly");
    sc_recur->add_option("--config", config_path)->required();
    sc_recur->add_option("--trunc", trunc)->required();
    sc_recur->add_option("--bound-at", bound_at, "evaluate the denominator bound at this index");
    add_common(sc_recur);

    int batch = 1;
    auto* sc_random = app.add_subcommand("random", "sample a dyadic coefficient series");
    sc_random->add_option("--seed", seed)->required();
    sc_random->add_option("--trunc", trunc)->required();
    sc_random->add_flag("--rescale", rescale, "halve the domain and range for unit metadata");
    sc_random->add_option("--batch", batch, "emit one record per seed, starting at --seed");
    add_common(sc_random);

    auto* sc_zeros = app.add_subcommand("zeros", "certified zero count in a disc");
    sc_zeros->add_option("--series", series_path)->required();
    sc_zeros->add_option("--poly", poly_path)->required();
    sc_zeros->add_option("--radius", radius);
    sc_zeros->add_option("--trunc", trunc);
    sc_zeros->add_option("--panels", panels);
    add_common(sc_zeros);

    auto* sc_rat = app.add_subcommand("ratpoints", "bounded-height rational points on the graph");
    sc_rat->add_option("--series", series_path)->required();
    sc_rat->add_option("--height", height_cap)->required();
    sc_rat->add_option("--trunc", trunc, "truncation order (default: auto)");
    sc_rat->add_option("--csv", csv_path, "per-point CSV output");
    add_common(sc_rat);

    auto* sc_sweep = app.add_subcommand("sweep", "batch experiments over a config grid");
    sc_sweep->add_option("--config", config_path)->required();
    sc_sweep->add_option("--csv", csv_path, "CSV output path");
    add_common(sc_sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (sc_series->parsed()) return cmd_series(out, series_path, profile);
        if (sc_bautin->parsed())
            return cmd_bautin(out, series_path, family, degree, trunc, mode, budget, with_witness,
                              false, with_matrix);
        if (sc_nu->parsed())
            return cmd_bautin(out, series_path, family, degree, trunc, mode, budget, false, true, false);
        if (sc_delta->parsed()) return cmd_delta(out, series_path, degree);
        if (sc_eta->parsed())
            return cmd_eta(out, series_path, degree, base_order,
                           max_base_order > 0 ? max_base_order : 8 * (degree * degree + 2 * degree));
        if (sc_bounds->parsed())
            return cmd_bounds(out, formula, b_l, sigma_l, d_l, nu_l, md_l, qd_l, c_s, B_s, R_s,
                              delta_s, h_s, theta_l, q_s, p_s, phat_s, T_s, K_s, Rpoly_s, Spoly_s,
                              Zpoly_s, Qpoly_s, precision);
        if (sc_lac->parsed())
            return cmd_lacunary(out,
                                lacunary_spec_from_flags(lac_exponents, lac_rule, lac_start, lac_terms,
                                                         lac_coeffs, lac_first, lac_ratio, q_s, p_s),
                                trunc, sc_lac->count("--degree") ? degree : 0);
        if (sc_recur->parsed()) return cmd_recur(out, config_path, trunc, bound_at);
        if (sc_random->parsed()) return cmd_random(out, seed, trunc, rescale, batch);
        if (sc_zeros->parsed()) return cmd_zeros(out, series_path, poly_path, radius, trunc, panels);
        if (sc_rat->parsed()) return cmd_ratpoints(out, series_path, height_cap, trunc, csv_path);
        if (sc_sweep->parsed()) return cmd_sweep(out, config_path, csv_path);
    } catch (const bl::TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecision;
    } catch (const bl::PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
