// End-to-end checks of the command-line tool: exit-code contract, JSON
// determinism, and the witness replay loop. Invoked with the binary path.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
}

struct RunResult {
    int exitCode = -1;
    std::string output;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <lipsat-binary>\n";
        return 2;
    }
    std::string bin = argv[1];

    // parametrize prints the golden display form
    auto par = run(bin + " parametrize --f \"x^2+y^5\"");
    check(par.exitCode == 0, "parametrize exits 0");
    check(par.output.find("(t^5, -t^2) [mult 2]") != std::string::npos,
          "parametrize prints (t^5, -t^2) [mult 2]");

    // the golden x^2+y^5 run: exit 1, witness twist (z5), gap 6 < 7
    auto sat = run(bin + " saturation --f \"x^2+y^5\" --h \"y^3\" --format json --out /tmp/lipsat_cli_wit.json");
    check(sat.exitCode == 1, "saturation CertifiedNo exits 1");
    check(sat.output.find("\"(z5)\"") != std::string::npos, "witness twist is (z5)");
    check(sat.output.find("\"contractionModuleOrder\": \"7\"") != std::string::npos,
          "contraction pullback valuation 7");
    check(sat.output.find("\"residualOrder\": \"6\"") != std::string::npos, "target order gap 6");

    // generator membership run exits 0
    auto gen = run(bin + " saturation --f \"x^2+y^5\" --h \"2*x\"");
    check(gen.exitCode == 0, "generator membership exits 0");

    // forced truncation failure exits 3
    auto ceil = run("LIPSAT_TRUNC_CEILING=4 " + bin + " saturation --f \"x^2+y^5\" --h \"y^3\"");
    check(ceil.exitCode == 3, "truncation ceiling 4 exits 3");

    // malformed polynomial names the position, exits 2
    auto bad = run(bin + " iclosure --f \"x^2+*y\" --h \"y\"");
    check(bad.exitCode == 2, "malformed polynomial exits 2");
    check(bad.output.find("position") != std::string::npos, "parse error names the position");

    // unknown flag is a usage error
    auto flag = run(bin + " saturation --f \"x\" --h \"x\" --frobnicate");
    check(flag.exitCode == 2, "unknown flag exits 2");

    // determinism: identical config (including seed) gives byte-identical JSON
    std::string cmd = bin + " sweep --F \"x^2+y^5+w*y^4\" --fiber-vars x,y --params w"
                            " --samples 1..2 --exp 1 --root 6 --format json --seed 42";
    auto s1 = run(cmd), s2 = run(cmd);
    check(s1.exitCode == 0 && s2.exitCode == 0, "sweep exits 0");
    check(!s1.output.empty() && s1.output == s2.output,
          "identical seed and config give byte-identical JSON");

    // replay loop: confirmed witness exits 0, tampered witness is denied
    auto rep = run(bin + " replay /tmp/lipsat_cli_wit.json");
    check(rep.exitCode == 0, "replay confirms the recorded witness");
    check(rep.output.find("confirmed") != std::string::npos, "replay says confirmed");
    {
        std::ifstream in("/tmp/lipsat_cli_wit.json");
        std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto pos = body.find("\"(z5)\"");
        check(pos != std::string::npos, "witness file contains the twist");
        body.replace(pos, 6, "\"1\"");
        std::ofstream out("/tmp/lipsat_cli_tampered.json");
        out << body;
    }
    auto den = run(bin + " replay /tmp/lipsat_cli_tampered.json");
    check(den.exitCode == 1, "tampered witness is denied with exit 1");

    // malformed witness exits 2
    {
        std::ofstream out("/tmp/lipsat_cli_garbage.json");
        out << "{ not json";
    }
    auto mal = run(bin + " replay /tmp/lipsat_cli_garbage.json");
    check(mal.exitCode == 2, "malformed witness exits 2");

    // a CertifiedYes record replays by re-substituting the certificate
    auto yes = run(bin + " saturation --f \"x^2+y^5\" --h \"2*x\" --format json --out /tmp/lipsat_cli_yes.json");
    check(yes.exitCode == 0, "yes-record written");
    auto repy = run(bin + " replay /tmp/lipsat_cli_yes.json");
    check(repy.exitCode == 0 && repy.output.find("certificate") != std::string::npos,
          "CertifiedYes record confirms its combination");

    // config file is honored, explicit flags win
    {
        std::ofstream cfg("/tmp/lipsat_cli_cfg");
        cfg << "exp = 2\nroot = 6\n";
    }
    auto cfgrun = run(bin + " saturation --f \"x^2+y^5\" --h \"y^3\" --config /tmp/lipsat_cli_cfg --format json");
    check(cfgrun.exitCode == 1, "config-file bounds still find the witness");
    check(cfgrun.output.find("\"root\": 6") != std::string::npos, "config root bound recorded");

    std::cout << (failures ? "FAILED " : "PASSED ") << "cli suite (" << failures << " failures)\n";
    return failures ? 1 : 0;
}
