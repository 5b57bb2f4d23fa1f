#include "lipsat/report.hpp"

#include "lipsat/parse.hpp"

namespace lipsat {

namespace {

std::string opt_rat(const std::optional<Rat>& r, const std::optional<Rat>& trunc) {
    if (r) return rat_str(*r);
    if (trunc) return ">=" + rat_str(*trunc);
    return "infinity";
}

} // namespace

Json json_pseries(const PSeries& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back({{"e", rat_str(e)}, {"c", c.str()}});
    Json out;
    out["terms"] = terms;
    if (s.trunc()) out["trunc"] = rat_str(*s.trunc());
    else out["exact"] = true;
    return out;
}

Json json_branch(const Branch& b) {
    Json out;
    out["vars"] = b.vars;
    Json comps = Json::array();
    for (const auto& c : b.comps) comps.push_back(json_pseries(c));
    out["comps"] = comps;
    out["mult"] = b.mult;
    out["display"] = b.str();
    return out;
}

namespace {

Json json_reparam(const PSeries& u) {
    // search reparametrizations are monomials c*t^e; keep the general form too
    if (u.terms().size() == 1) {
        return Json{{"c", u.terms().begin()->second.str()},
                    {"e", rat_str(u.terms().begin()->first)}};
    }
    return json_pseries(u);
}

PSeries parse_reparam(const Json& j) {
    if (j.contains("c"))
        return PSeries::monomial(parse_cycrat(j.at("c").get<std::string>()),
                                 parse_rat(j.at("e").get<std::string>()));
    PSeries out;
    for (const auto& t : j.at("terms"))
        out = out + PSeries::monomial(parse_cycrat(t.at("c").get<std::string>()),
                                      parse_rat(t.at("e").get<std::string>()));
    if (j.contains("trunc")) out = out.truncated(parse_rat(j.at("trunc").get<std::string>()));
    return out;
}

} // namespace

Json json_pair_curve(const PairCurve& pc) {
    Json out;
    out["b1"] = pc.b1;
    out["b2"] = pc.b2;
    out["u1"] = json_reparam(pc.u1);
    out["u2"] = json_reparam(pc.u2);
    Json params = Json::object();
    for (const auto& [k, v] : pc.params) params[k] = v.str();
    out["params"] = params;
    out["display"] = pc.str();
    return out;
}

Json json_verdict(const Verdict& v) {
    Json out;
    out["kind"] = verdict_kind_name(v.kind);
    out["detail"] = v.detail;
    if (!v.orders.empty()) {
        Json rows = Json::array();
        for (const auto& r : v.orders)
            rows.push_back({{"branch", r.branch},
                            {"target", opt_rat(r.target, std::nullopt)},
                            {"ideal", opt_rat(r.ideal, std::nullopt)}});
        out["branchOrders"] = rows;
    }
    if (v.witnessBranch) out["witnessBranch"] = *v.witnessBranch;
    if (v.witness) out["witness"] = json_pair_curve(*v.witness);
    if (v.targetOrder) out["targetOrder"] = rat_str(*v.targetOrder);
    if (v.residualOrder) out["residualOrder"] = rat_str(*v.residualOrder);
    if (!v.pivots.empty()) {
        Json piv = Json::array();
        for (const auto& p : v.pivots) piv.push_back(rat_str(p));
        out["pivots"] = piv;
    }
    if (v.contractionModuleOrder)
        out["contractionModuleOrder"] = rat_str(*v.contractionModuleOrder);
    if (v.contractionTargetOrder)
        out["contractionTargetOrder"] = rat_str(*v.contractionTargetOrder);
    if (!v.polyCertificate.empty()) {
        Json cert = Json::array();
        for (const auto& p : v.polyCertificate) cert.push_back(p.str());
        out["certificate"] = cert;
    }
    if (v.bound)
        out["bound"] = {{"exp", v.bound->exp}, {"root", v.bound->root}, {"div", v.bound->div}};
    return out;
}

Json json_sweep(const SweepReport& rep) {
    Json out;
    out["schema"] = "lipsat/sweep/1";
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json row;
        Json y0 = Json::array();
        for (const auto& q : r.y0) y0.push_back(rat_str(q));
        row["y0"] = y0;
        if (!r.error.empty()) {
            row["error"] = r.error;
        } else {
            row["ilA"] = json_verdict(*r.ilA);
            row["ilmY"] = json_verdict(*r.ilmY);
            row["W"] = json_verdict(*r.W);
        }
        row["signature"] = r.signature();
        rows.push_back(std::move(row));
    }
    out["rows"] = rows;
    out["majority"] = rep.majority;
    out["exceptional"] = rep.exceptional;
    return out;
}

Json witness_record(const std::string& tool, const Poly& f, const Poly& h,
                    const std::vector<Poly>& gens, const Rat& trunc, const Verdict& v,
                    unsigned long seed) {
    Json out;
    out["schema"] = "lipsat/witness/1";
    out["tool"] = tool;
    out["seed"] = seed;
    out["f"] = f.str();
    out["h"] = h.str();
    Json g = Json::array();
    for (const auto& p : gens) g.push_back(p.str());
    out["gens"] = g;
    out["truncation"] = rat_str(trunc);
    out["verdict"] = json_verdict(v);
    return out;
}

ReplayResult replay_witness(const Json& record) {
    ReplayResult res;
    try {
        if (record.at("schema").get<std::string>() != "lipsat/witness/1")
            fail(ErrorCode::ParseError, "unknown witness schema");
        Poly f = parse_poly(record.at("f").get<std::string>());
        Poly h = parse_poly(record.at("h").get<std::string>());
        std::vector<Poly> gens;
        for (const auto& s : record.at("gens")) gens.push_back(parse_poly(s.get<std::string>()));
        Rat T = parse_rat(record.at("truncation").get<std::string>());
        const Json& jv = record.at("verdict");
        std::string kind = jv.at("kind").get<std::string>();
        if (kind == "NoObstructionUpToBound") {
            res.confirmed = true;
            res.detail = "bounded verdict carries no witness to confirm";
            return res;
        }
        if (kind == "CertifiedYes") {
            if (!jv.contains("certificate")) {
                res.confirmed = false;
                res.detail = "CertifiedYes record without a certificate";
                return res;
            }
            // re-substitute the stored combination
            std::vector<std::string> vars = f.vars();
            DoubledModule M = double_ideal(gens, vars);
            Poly s0, s1;
            size_t k = 0;
            for (const auto& cs : jv.at("certificate")) {
                Poly g = parse_poly(cs.get<std::string>());
                s0 += g * M.genList[k].first;
                s1 += g * M.genList[k].second;
                ++k;
            }
            bool ok = (s0 == h) && (s1 == M.prime(h));
            res.confirmed = ok;
            res.detail = ok ? "certificate re-substitutes to h_D exactly"
                            : "certificate does not reproduce h_D";
            return res;
        }
        // CertifiedNo: re-evaluate the witness curve
        if (!jv.contains("witness")) fail(ErrorCode::ParseError, "record has no witness curve");
        const Json& jw = jv.at("witness");
        PairCurve pc;
        pc.b1 = jw.at("b1").get<int>();
        pc.b2 = jw.at("b2").get<int>();
        pc.u1 = parse_reparam(jw.at("u1"));
        pc.u2 = parse_reparam(jw.at("u2"));
        for (const auto& [key, val] : jw.at("params").items())
            pc.params[key] = parse_cycrat(val.get<std::string>());
        std::vector<Branch> branches = puiseux_branches(f, std::max(T, Rat(24)));
        std::vector<std::string> vars = f.vars();
        DoubledModule M = double_ideal(gens, vars);
        Verdict v = closure_membership_on_curve(h, M, pc, branches, std::max(T, Rat(24)));
        res.recomputed = v;
        if (!v.no()) {
            res.confirmed = false;
            res.detail = "witness curve no longer refutes (got " +
                         std::string(verdict_kind_name(v.kind)) + ")";
            return res;
        }
        bool ordersMatch = true;
        if (jv.contains("residualOrder"))
            ordersMatch &= rat_str(*v.residualOrder) == jv.at("residualOrder").get<std::string>();
        if (jv.contains("contractionModuleOrder") && v.contractionModuleOrder)
            ordersMatch &= rat_str(*v.contractionModuleOrder) ==
                           jv.at("contractionModuleOrder").get<std::string>();
        res.confirmed = ordersMatch;
        res.detail = ordersMatch ? "witness replays to the recorded order gap"
                                 : "witness refutes but with a different order gap";
        return res;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(ErrorCode::ParseError, std::string("malformed witness: ") + e.what());
    }
}

} // namespace lipsat
