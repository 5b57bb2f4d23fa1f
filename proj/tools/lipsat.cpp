/* Command-line front end: parse inputs, dispatch subcommands, emit text and
 * JSON reports with replayable witnesses.
 *
 * Exit codes: 0 = CertifiedYes / NoObstruction / clean report,
 *             1 = CertifiedNo (machine-usable falsification signal),
 *             2 = usage or parse error,
 *             3 = TruncationInsufficient or other engine errors. */

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lipsat/parse.hpp"
#include "lipsat/report.hpp"

using namespace lipsat;

namespace {

struct Common {
    std::string format = "text";
    unsigned long seed = 20260808UL;
    std::string configFile;
    long truncCeiling = 4096;
    bool ceilingSetExplicitly = false;
    std::string outFile;
    SearchBound bound;
    bool rootSet = false;

    void add(CLI::App* cmd, bool withBounds) {
        cmd->add_option("--format", format, "output format: text|json|csv");
        cmd->add_option("--seed", seed, "seed recorded in reports and used for sampling");
        cmd->add_option("--config", configFile, "key=value file for bounds and ceilings");
        cmd->add_option("--trunc-ceiling", truncCeiling, "truncation ceiling for deepening")
            ->each([this](const std::string&) { ceilingSetExplicitly = true; });
        cmd->add_option("--out", outFile, "also write the JSON report to this file");
        if (withBounds) {
            cmd->add_option("--exp", bound.exp, "max reparametrization exponent");
            cmd->add_option("--root", bound.root, "max twist root-of-unity order")
                ->each([this](const std::string&) { rootSet = true; });
            cmd->add_option("--div", bound.div, "max division degree for yes-certificates");
        }
    }

    void finalize(long fdeg) {
        if (!configFile.empty()) {
            std::ifstream in(configFile);
            if (!in) fail(ErrorCode::ParseError, "cannot open config file " + configFile);
            std::string line;
            while (std::getline(in, line)) {
                auto eq = line.find('=');
                if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
                std::string key = line.substr(0, eq), val = line.substr(eq + 1);
                auto trim = [](std::string s) {
                    s.erase(0, s.find_first_not_of(" \t"));
                    s.erase(s.find_last_not_of(" \t") + 1);
                    return s;
                };
                key = trim(key);
                val = trim(val);
                if (key == "exp") bound.exp = std::stol(val);
                else if (key == "root") { bound.root = std::stol(val); rootSet = true; }
                else if (key == "div") bound.div = std::stol(val);
                else if (key == "trunc_ceiling" && !ceilingSetExplicitly)
                    truncCeiling = std::stol(val);
                else if (key == "seed") seed = std::stoul(val);
            }
        }
        if (const char* env = std::getenv("LIPSAT_TRUNC_CEILING")) truncCeiling = std::atol(env);
        if (!rootSet) bound.root = std::max(2L, 2 * fdeg); // default twist bound: twice the curve degree
        if (bound.exp < 1 || bound.root < 1 || bound.div < 0 || truncCeiling < 1)
            fail(ErrorCode::ParseError, "bounds and ceilings must be positive");
    }

    void emit(const Json& j, const std::string& text) const {
        if (format == "json") std::cout << j.dump(2) << "\n";
        else std::cout << text;
        if (!outFile.empty()) {
            std::ofstream out(outFile);
            out << j.dump(2) << "\n";
        }
    }
};


CLI::App* make_sub(CLI::App& app, const std::string& name, const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->set_help_flag("--help", "print help"); // leave --h free for test elements
    return cmd;
}

int exit_for(const Verdict& v) { return v.no() ? 1 : 0; }

std::vector<Poly> parse_ideal(const std::string& spec, const Poly& f) {
    std::vector<Poly> gens;
    if (spec.empty()) {
        for (const auto& v : f.vars()) gens.push_back(f.partial(v));
        return gens;
    }
    size_t pos = 0;
    while (pos != std::string::npos) {
        size_t next = spec.find(';', pos);
        std::string piece =
            next == std::string::npos ? spec.substr(pos) : spec.substr(pos, next - pos);
        if (!piece.empty()) gens.push_back(parse_poly(piece));
        pos = next == std::string::npos ? next : next + 1;
    }
    if (gens.empty()) fail(ErrorCode::EmptyIdeal, "empty ideal specification");
    return gens;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

std::vector<std::vector<Rat>> parse_samples(const std::string& s) {
    std::vector<std::vector<Rat>> out;
    auto range = s.find("..");
    if (range != std::string::npos && s.find(';') == std::string::npos &&
        s.find(',') == std::string::npos) {
        long a = std::stol(s.substr(0, range)), b = std::stol(s.substr(range + 2));
        for (long k = a; k <= b; ++k) out.push_back({rat(k)});
        return out;
    }
    for (const auto& sample : split(s, ';')) {
        if (sample.empty()) continue;
        std::vector<Rat> y0;
        for (const auto& comp : split(sample, ',')) y0.push_back(parse_rat(comp));
        out.push_back(std::move(y0));
    }
    return out;
}

std::map<std::string, CycRat> parse_point(const std::string& s) {
    std::map<std::string, CycRat> out;
    for (const auto& item : split(s, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorCode::ParseError, "point entry needs var=value");
        out[item.substr(0, eq)] = parse_cycrat(item.substr(eq + 1));
    }
    return out;
}

std::complex<double> parse_complex(std::string s) {
    // rational ("3/2"), decimal ("1.5"), or complex ("1+2i", "-0.5-1i")
    if (s.empty()) fail(ErrorCode::ParseError, "empty complex literal");
    auto ipos = s.find('i');
    if (ipos == std::string::npos) {
        if (s.find('/') != std::string::npos) return {parse_rat(s).get_d(), 0.0};
        return {std::stod(s), 0.0};
    }
    // split at the last +/- that is not the leading sign
    size_t cut = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i)
        if ((s[i] == '+' || s[i] == '-') && (s[i - 1] != 'e' && s[i - 1] != 'E')) cut = i;
    double re = 0, im = 0;
    std::string imPart;
    if (cut == std::string::npos) {
        imPart = s.substr(0, ipos);
    } else {
        re = std::stod(s.substr(0, cut));
        imPart = s.substr(cut, ipos - cut);
    }
    if (imPart.empty() || imPart == "+") im = 1;
    else if (imPart == "-") im = -1;
    else im = std::stod(imPart);
    return {re, im};
}

Hyperplane parse_plane(const std::string& s) {
    std::vector<std::complex<double>> c;
    for (const auto& comp : split(s, ',')) c.push_back(parse_complex(comp));
    return Hyperplane::make(std::move(c));
}

Family build_family(const std::string& F, const std::string& fiberVars,
                    const std::string& paramVars) {
    Poly f = parse_poly(F);
    std::vector<std::string> fv = split(fiberVars, ','), pv;
    if (!paramVars.empty()) pv = split(paramVars, ',');
    return family_ideals(f, fv, pv);
}

std::string verdict_text(const Verdict& v) {
    std::string out = std::string(verdict_kind_name(v.kind)) + ": " + v.detail + "\n";
    for (const auto& r : v.orders) {
        out += "  branch " + std::to_string(r.branch) + ": target order " +
               (r.target ? rat_str(*r.target) : std::string("(vanishes)")) + ", ideal valuation " +
               (r.ideal ? rat_str(*r.ideal) : std::string("?")) + "\n";
    }
    if (v.witness) out += "  witness: " + v.witness->str() + "\n";
    if (v.residualOrder && !v.pivots.empty()) {
        out += "  gap: residual order " + rat_str(*v.residualOrder) + " < pivot " +
               rat_str(v.pivots.back()) + "\n";
    }
    if (v.contractionModuleOrder && v.contractionTargetOrder)
        out += "  (1,-1) contraction: module valuation " + rat_str(*v.contractionModuleOrder) +
               ", target valuation " + rat_str(*v.contractionTargetOrder) + "\n";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lipsat: Lipschitz saturation and infinitesimal Lipschitz conditions on curve germs"};
    app.require_subcommand(1);
    std::function<int()> runner;

    // ----- parametrize
    {
        auto* cmd = make_sub(app, "parametrize", "branch parametrizations of a plane curve");
        auto common = std::make_shared<Common>();
        auto fstr = std::make_shared<std::string>();
        auto trunc = std::make_shared<long>(0);
        cmd->add_option("--f", *fstr, "curve polynomial")->required();
        cmd->add_option("--trunc", *trunc, "truncation order (default 4 deg^2)");
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Poly f = parse_poly(*fstr);
                common->finalize(f.degree());
                auto branches =
                    *trunc > 0 ? puiseux_branches(f, rat(*trunc)) : puiseux_branches(f);
                Json j;
                j["schema"] = "lipsat/branches/1";
                j["seed"] = common->seed;
                j["f"] = f.str();
                Json arr = Json::array();
                std::string text;
                for (const auto& b : branches) {
                    arr.push_back(json_branch(b));
                    text += b.str() + " [mult " + std::to_string(b.mult) + "]\n";
                }
                j["branches"] = arr;
                common->emit(j, text);
                return 0;
            };
        });
    }

    // ----- iclosure
    {
        auto* cmd = make_sub(app, "iclosure", "integral-closure membership on a curve");
        auto common = std::make_shared<Common>();
        auto fstr = std::make_shared<std::string>(), hstr = std::make_shared<std::string>(),
             ideal = std::make_shared<std::string>();
        cmd->add_option("--f", *fstr, "curve polynomial")->required();
        cmd->add_option("--h", *hstr, "test element")->required();
        cmd->add_option("--ideal", *ideal, "ideal generators g1;g2;... (default: Jacobian of f)");
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Poly f = parse_poly(*fstr), h = parse_poly(*hstr);
                common->finalize(f.degree());
                IdealOnCurve I = IdealOnCurve::make(parse_ideal(*ideal, f), f);
                Verdict v = ic_membership(h, I);
                Json j = witness_record("iclosure", f, h, I.gens, default_truncation(f), v,
                                        common->seed);
                common->emit(j, verdict_text(v));
                return exit_for(v);
            };
        });
    }

    // ----- mult
    {
        auto* cmd = make_sub(app, "mult", "multiplicity of an ideal on a curve");
        auto common = std::make_shared<Common>();
        auto fstr = std::make_shared<std::string>(), ideal = std::make_shared<std::string>();
        cmd->add_option("--f", *fstr, "curve polynomial")->required();
        cmd->add_option("--ideal", *ideal, "ideal generators (default: Jacobian of f)");
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Poly f = parse_poly(*fstr);
                common->finalize(f.degree());
                IdealOnCurve I = IdealOnCurve::make(parse_ideal(*ideal, f), f);
                long m = ideal_multiplicity(I);
                Json j;
                j["schema"] = "lipsat/mult/1";
                j["seed"] = common->seed;
                j["f"] = f.str();
                j["multiplicity"] = m;
                common->emit(j, "multiplicity " + std::to_string(m) + "\n");
                return 0;
            };
        });
    }

    // ----- saturation
    {
        auto* cmd = make_sub(app, "saturation", "Lipschitz-saturation membership");
        auto common = std::make_shared<Common>();
        auto fstr = std::make_shared<std::string>(), hstr = std::make_shared<std::string>(),
             ideal = std::make_shared<std::string>();
        cmd->add_option("--f", *fstr, "curve polynomial")->required();
        cmd->add_option("--h", *hstr, "test element")->required();
        cmd->add_option("--ideal", *ideal, "ideal generators (default: Jacobian of f)");
        common->add(cmd, true);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Poly f = parse_poly(*fstr), h = parse_poly(*hstr);
                common->finalize(f.degree());
                IdealOnCurve I = IdealOnCurve::make(parse_ideal(*ideal, f), f);
                Verdict v = saturation_membership(h, I, common->bound, {},
                                                  rat(common->truncCeiling));
                Json j = witness_record("saturation", f, h, I.gens, default_truncation(f), v,
                                        common->seed);
                j["bound"] = {{"exp", common->bound.exp},
                              {"root", common->bound.root},
                              {"div", common->bound.div}};
                common->emit(j, verdict_text(v));
                return exit_for(v);
            };
        });
    }

    // ----- check-ila / check-ilmy / check-w
    for (const auto& [name, help] :
         std::vector<std::pair<std::string, std::string>>{
             {"check-ila", "infinitesimal Lipschitz condition iL_A at a parameter point"},
             {"check-ilmy", "infinitesimal Lipschitz condition iL_mY at a parameter point"},
             {"check-w", "Verdier condition W at a parameter point"}}) {
        auto* cmd = make_sub(app, name, help);
        auto common = std::make_shared<Common>();
        auto Fstr = std::make_shared<std::string>(), fib = std::make_shared<std::string>(),
             par = std::make_shared<std::string>(), y0s = std::make_shared<std::string>();
        cmd->add_option("--F", *Fstr, "family polynomial")->required();
        cmd->add_option("--fiber-vars", *fib, "fiber coordinates, comma separated")->required();
        cmd->add_option("--params", *par, "parameter coordinates, comma separated");
        cmd->add_option("--y0", *y0s, "parameter point, comma separated rationals")->required();
        common->add(cmd, true);
        std::string which = name;
        cmd->callback([=, &runner] {
            runner = [=]() {
                Family fam = build_family(*Fstr, *fib, *par);
                common->finalize(fam.F.degree());
                std::vector<Rat> y0;
                for (const auto& c : split(*y0s, ',')) y0.push_back(parse_rat(c));
                Verdict v = which == "check-ila" ? check_ilA(fam, y0, common->bound)
                            : which == "check-ilmy" ? check_ilmY(fam, y0, common->bound)
                                                    : check_W(fam, y0, common->bound);
                Json j;
                j["schema"] = "lipsat/condition/1";
                j["seed"] = common->seed;
                j["tool"] = which;
                j["F"] = fam.F.str();
                j["y0"] = *y0s;
                j["verdict"] = json_verdict(v);
                common->emit(j, verdict_text(v));
                return exit_for(v);
            };
        });
    }

    // ----- cosupport
    {
        auto* cmd = make_sub(app, "cosupport", "rank of the doubled module at a point pair");
        auto common = std::make_shared<Common>();
        auto Fstr = std::make_shared<std::string>(), fib = std::make_shared<std::string>(),
             par = std::make_shared<std::string>(), point = std::make_shared<std::string>(),
             module = std::make_shared<std::string>("my");
        cmd->add_option("--F", *Fstr, "family polynomial")->required();
        cmd->add_option("--fiber-vars", *fib, "fiber coordinates")->required();
        cmd->add_option("--params", *par, "parameter coordinates");
        cmd->add_option("--point", *point, "x=..,y=..,x'=..,y'=..,w=..")->required();
        cmd->add_option("--module", *module, "my (m_Y J_z) or jz (J_z)");
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Family fam = build_family(*Fstr, *fib, *par);
                common->finalize(fam.F.degree());
                int r = cosupport_rank(fam, parse_point(*point), *module != "jz");
                Json j;
                j["schema"] = "lipsat/cosupport/1";
                j["seed"] = common->seed;
                j["rank"] = r;
                common->emit(j, "rank " + std::to_string(r) + "\n");
                return 0;
            };
        });
    }

    // ----- sweep
    {
        auto* cmd = make_sub(app, "sweep", "condition verdicts across parameter samples");
        auto common = std::make_shared<Common>();
        auto Fstr = std::make_shared<std::string>(), fib = std::make_shared<std::string>(),
             par = std::make_shared<std::string>(), samples = std::make_shared<std::string>();
        cmd->add_option("--F", *Fstr, "family polynomial")->required();
        cmd->add_option("--fiber-vars", *fib, "fiber coordinates")->required();
        cmd->add_option("--params", *par, "parameter coordinates")->required();
        cmd->add_option("--samples", *samples, "1..10 or s1;s2;... (components comma separated)")
            ->required();
        common->add(cmd, true);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Family fam = build_family(*Fstr, *fib, *par);
                common->finalize(fam.F.degree());
                SweepReport rep = parameter_sweep(fam, parse_samples(*samples), common->bound);
                Json j = json_sweep(rep);
                j["seed"] = common->seed;
                std::string text;
                for (const auto& row : rep.rows) {
                    text += "w = ";
                    for (size_t i = 0; i < row.y0.size(); ++i)
                        text += (i ? "," : "") + rat_str(row.y0[i]);
                    text += ": " + row.signature() + "\n";
                }
                text += "majority: " + rep.majority + "; exceptional rows: " +
                        std::to_string(rep.exceptional.size()) + "\n";
                common->emit(j, text);
                return 0;
            };
        });
    }

    // ----- grassmann
    {
        auto* cmd = make_sub(app, "grassmann", "Grassmann-modification chart of F");
        auto common = std::make_shared<Common>();
        auto Fstr = std::make_shared<std::string>();
        auto chart = std::make_shared<int>(-1);
        cmd->add_option("--F", *Fstr, "hypersurface polynomial")->required();
        cmd->add_option("--chart", *chart, "index of the dependent coordinate (default last)");
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Poly F = parse_poly(*Fstr);
                common->finalize(F.degree());
                int c = *chart >= 0 ? *chart : (int)F.vars().size() - 1;
                GrassmannChart gc = grassmann_chart(F, c);
                Json j;
                j["schema"] = "lipsat/grassmann/1";
                j["seed"] = common->seed;
                j["G"] = gc.G.str();
                Json da = Json::array(), jz = Json::array();
                for (const auto& p : gc.dGda) da.push_back(p.str());
                for (const auto& p : gc.JzG) jz.push_back(p.str());
                j["dGda"] = da;
                j["JzG"] = jz;
                std::string text = "G = " + gc.G.str() + "\n";
                for (size_t i = 0; i < gc.dGda.size(); ++i)
                    text += "dG/d" + gc.aVars[i] + " = " + gc.dGda[i].str() + "\n";
                common->emit(j, text);
                return 0;
            };
        });
    }

    // ----- section
    {
        auto* cmd = make_sub(app, "section", "hyperplane-section genericity falsifier");
        auto common = std::make_shared<Common>();
        auto Fstr = std::make_shared<std::string>(), H = std::make_shared<std::string>();
        cmd->add_option("--F", *Fstr, "surface polynomial in 3 variables")->required();
        cmd->add_option("--H", *H, "hyperplane coefficients h1,h2,h3")->required();
        common->add(cmd, true);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Poly F = parse_poly(*Fstr);
                common->finalize(F.degree());
                std::vector<Rat> coeffs;
                for (const auto& c : split(*H, ',')) coeffs.push_back(parse_rat(c));
                Verdict v = hyperplane_section_check(F, coeffs, common->bound);
                Json j;
                j["schema"] = "lipsat/section/1";
                j["seed"] = common->seed;
                j["F"] = F.str();
                j["H"] = *H;
                j["verdict"] = json_verdict(v);
                common->emit(j, verdict_text(v));
                return exit_for(v);
            };
        });
    }

    // ----- distance
    {
        auto* cmd = make_sub(app, "distance", "distance between hyperplanes");
        auto common = std::make_shared<Common>();
        auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>(),
             method = std::make_shared<std::string>("both");
        cmd->add_option("--a", *a, "first coefficient vector, comma separated")->required();
        cmd->add_option("--b", *b, "second coefficient vector")->required();
        cmd->add_option("--method", *method, "sup|inner|both");
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                common->finalize(1);
                Hyperplane A = parse_plane(*a), B = parse_plane(*b);
                Json j;
                j["schema"] = "lipsat/distance/1";
                j["seed"] = common->seed;
                std::string text;
                if (*method != "inner") {
                    double d = hyperplane_distance(A, B, DistanceMethod::SupFormula);
                    j["supFormula"] = d;
                    text += "supFormula      " + std::to_string(d) + "\n";
                }
                if (*method != "sup") {
                    double d = hyperplane_distance(A, B, DistanceMethod::InnerProductDef);
                    j["innerProductDef"] = d;
                    text += "innerProductDef " + std::to_string(d) + "\n";
                }
                common->emit(j, text);
                return 0;
            };
        });
    }

    // ----- probe-tangent
    {
        auto* cmd = make_sub(app, "probe-tangent", "tangent-distance commensurability probe");
        auto common = std::make_shared<Common>();
        auto Fstr = std::make_shared<std::string>(), fib = std::make_shared<std::string>(),
             par = std::make_shared<std::string>(), y0s = std::make_shared<std::string>();
        auto n = std::make_shared<int>(50);
        cmd->add_option("--F", *Fstr, "family polynomial")->required();
        cmd->add_option("--fiber-vars", *fib, "fiber coordinates")->required();
        cmd->add_option("--params", *par, "parameter coordinates");
        cmd->add_option("--y0", *y0s, "parameter point")->required();
        cmd->add_option("--n", *n, "number of sample pairs");
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Family fam = build_family(*Fstr, *fib, *par);
                common->finalize(fam.F.degree());
                std::vector<Rat> y0;
                for (const auto& c : split(*y0s, ',')) y0.push_back(parse_rat(c));
                auto samples = tangent_commensurability_probe(fam, y0, *n, common->seed);
                Json j;
                j["schema"] = "lipsat/probe-tangent/1";
                j["seed"] = common->seed;
                Json rows = Json::array();
                double rmin = 0, rmax = 0;
                bool first = true;
                std::string csv = "totalTangentDist,fiberTangentDist,pointDist,ratio\n";
                for (const auto& s : samples) {
                    rows.push_back({{"total", s.totalTangentDist},
                                    {"fiber", s.fiberTangentDist},
                                    {"point", s.pointDist},
                                    {"ratio", s.ratio}});
                    csv += std::to_string(s.totalTangentDist) + "," +
                           std::to_string(s.fiberTangentDist) + "," + std::to_string(s.pointDist) +
                           "," + std::to_string(s.ratio) + "\n";
                    rmin = first ? s.ratio : std::min(rmin, s.ratio);
                    rmax = first ? s.ratio : std::max(rmax, s.ratio);
                    first = false;
                }
                j["samples"] = rows;
                j["ratioMin"] = rmin;
                j["ratioMax"] = rmax;
                std::string text = common->format == "csv"
                                       ? csv
                                       : std::to_string(samples.size()) + " samples, ratio in [" +
                                             std::to_string(rmin) + ", " + std::to_string(rmax) +
                                             "]\n";
                common->emit(j, text);
                return 0;
            };
        });
    }

    // ----- probe-lipschitz
    {
        auto* cmd = make_sub(app, "probe-lipschitz", "Lipschitz exponent along a pair-curve");
        auto common = std::make_shared<Common>();
        auto fstr = std::make_shared<std::string>(), hstr = std::make_shared<std::string>(),
             ideal = std::make_shared<std::string>(), u1c = std::make_shared<std::string>("1"),
             u2c = std::make_shared<std::string>("1");
        auto b1 = std::make_shared<int>(0), b2 = std::make_shared<int>(0);
        auto u1e = std::make_shared<long>(1), u2e = std::make_shared<long>(1);
        cmd->add_option("--f", *fstr, "curve polynomial")->required();
        cmd->add_option("--h", *hstr, "test element")->required();
        cmd->add_option("--ideal", *ideal, "ideal generators (default: Jacobian)");
        cmd->add_option("--b1", *b1, "branch index of side 1 (-1 = zero side)");
        cmd->add_option("--b2", *b2, "branch index of side 2 (-1 = zero side)");
        cmd->add_option("--u1c", *u1c, "twist coefficient of side 1, e.g. (z5)");
        cmd->add_option("--u1e", *u1e, "reparametrization exponent of side 1");
        cmd->add_option("--u2c", *u2c, "twist coefficient of side 2");
        cmd->add_option("--u2e", *u2e, "reparametrization exponent of side 2");
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                Poly f = parse_poly(*fstr), h = parse_poly(*hstr);
                common->finalize(f.degree());
                IdealOnCurve I = IdealOnCurve::make(parse_ideal(*ideal, f), f);
                PairCurve pc;
                pc.b1 = *b1;
                pc.b2 = *b2;
                pc.u1 = PSeries::monomial(parse_cycrat(*u1c), rat(*u1e));
                pc.u2 = PSeries::monomial(parse_cycrat(*u2c), rat(*u2e));
                auto e = lipschitz_exponent_probe(h, I, pc);
                Json j;
                j["schema"] = "lipsat/probe-lipschitz/1";
                j["seed"] = common->seed;
                j["exponent"] = e ? rat_str(*e) : "infinity";
                std::string text =
                    "lipschitz exponent " + (e ? rat_str(*e) : std::string("infinity")) +
                    (e && *e < 0 ? "  (failure direction)\n" : "\n");
                common->emit(j, text);
                return 0;
            };
        });
    }

    // ----- replay
    {
        auto* cmd = make_sub(app, "replay", "re-evaluate a recorded witness");
        auto common = std::make_shared<Common>();
        auto file = std::make_shared<std::string>();
        cmd->add_option("witness", *file, "witness JSON file")->required();
        common->add(cmd, false);
        cmd->callback([=, &runner] {
            runner = [=]() {
                common->finalize(1);
                std::ifstream in(*file);
                if (!in) fail(ErrorCode::ParseError, "cannot open " + *file);
                Json rec;
                try {
                    in >> rec;
                } catch (const std::exception& e) {
                    fail(ErrorCode::ParseError, std::string("bad JSON: ") + e.what());
                }
                ReplayResult r = replay_witness(rec);
                Json j;
                j["schema"] = "lipsat/replay/1";
                j["seed"] = common->seed;
                j["confirmed"] = r.confirmed;
                j["detail"] = r.detail;
                common->emit(j, std::string(r.confirmed ? "confirmed: " : "DENIED: ") + r.detail +
                                    "\n");
                return r.confirmed ? 0 : 1;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return runner();
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == ErrorCode::ParseError ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
