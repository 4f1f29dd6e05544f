// Exercises the installed CLI binary end to end: exit codes, CSV/JSON
// contracts, reproducibility.  The binary path arrives as argv[1] from CTest.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_bin;
int g_failures = 0;

int run(const std::string& args) {
    const std::string cmd = g_bin + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "[cli FAIL] " << what << "\n";
    } else {
        std::cout << "[cli ok] " << what << "\n";
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-stablewh>\n";
        return 1;
    }
    g_bin = argv[1];

    // exponent: zero row sums at z = 0 for the Cauchy case
    {
        const int rc = run("exponent --alpha 1.0 --rho 0.5 --which F --z-re-min 0 --z-re-max 0 "
                           "--z-re-count 1 --out cli_exp.csv");
        expect(rc == 0, "exponent exit 0");
        const auto text = slurp("cli_exp.csv");
        expect(text.find("m11_re") != std::string::npos, "exponent CSV header");
        expect(text.find("# stablewh exponent") != std::string::npos,
               "exponent CSV embeds config comment");
        std::ifstream in("cli_exp.csv");
        std::string line;
        std::getline(in, line);
        std::getline(in, line);
        std::getline(in, line);
        const auto cols = split(line, ',');
        const double m11 = std::stod(cols[2]), m12 = std::stod(cols[4]);
        expect(std::abs(m11 + m12) < 1e-12, "exponent row sums vanish at z = 0");
    }

    // exponent: determinant column crosses zero on a grid through alpha - 1
    {
        const int rc = run("exponent --alpha 1.5 --rho 0.55 --which F --z-re-min 0.2 "
                           "--z-re-max 0.8 --z-re-count 13 --out cli_det.csv");
        expect(rc == 0, "exponent grid exit 0");
        std::ifstream in("cli_det.csv");
        std::string line;
        std::getline(in, line);
        std::getline(in, line);
        double lo = 1e300, hi = -1e300;
        while (std::getline(in, line)) {
            const auto cols = split(line, ',');
            const double det = std::stod(cols[10]);
            lo = std::min(lo, det);
            hi = std::max(hi, det);
        }
        expect(lo < 0.0 && hi > 0.0, "determinant column crosses 0 at alpha - 1");
    }

    // malformed rho: exit 2, message cites the admissible interval
    {
        const int rc = run("exponent --alpha 1.5 --rho 0.9 --which F --out cli_bad.csv");
        expect(rc == 2, "inadmissible rho exits 2");
        const auto err = slurp("cli_stderr.txt");
        expect(err.find("admissible") != std::string::npos, "error message cites admissibility");
    }

    // factors: lambda = 0 row has Phi_i = 0 and K off-diagonals = 1 (small alpha)
    {
        const int rc = run("factors --alpha 0.8 --rho 0.6 --lambda-min 0 --lambda-max 2 "
                           "--lambda-count 3 --out cli_fac.csv");
        expect(rc == 0, "factors exit 0");
        std::ifstream in("cli_fac.csv");
        std::string line;
        std::getline(in, line);
        std::getline(in, line);
        std::getline(in, line);
        const auto cols = split(line, ',');
        const double k11 = std::stod(cols[1]), k12 = std::stod(cols[2]);
        const double kh11 = std::stod(cols[5]), kh12 = std::stod(cols[6]);
        const double Phi1 = std::stod(cols[9]), K12 = std::stod(cols[13]), K21 = std::stod(cols[14]);
        expect(std::abs(Phi1) < 1e-10, "Phi1(0) = 0");
        expect(std::abs(K12 - 1.0) < 1e-10 && std::abs(K21 - 1.0) < 1e-10, "K(0) = 1");
        expect(std::abs(k11 + k12) < 1e-9, "ascending row sums vanish at 0 (alpha < 1)");
        expect(kh11 + kh12 > 1e-9, "dual row sums positive at 0 (alpha < 1)");
    }

    // factors: reversed killing pattern for alpha in (1,2)
    {
        run("factors --alpha 1.5 --rho 0.55 --lambda-min 0 --lambda-max 1 --lambda-count 2 "
            "--out cli_fac2.csv");
        std::ifstream in("cli_fac2.csv");
        std::string line;
        std::getline(in, line);
        std::getline(in, line);
        std::getline(in, line);
        const auto cols = split(line, ',');
        const double k11 = std::stod(cols[1]), k12 = std::stod(cols[2]);
        const double kh11 = std::stod(cols[5]), kh12 = std::stod(cols[6]);
        expect(k11 + k12 > 1e-9, "ascending killed at 0 (alpha > 1)");
        expect(std::abs(kh11 + kh12) < 1e-9, "dual unkilled at 0 (alpha > 1)");
    }

    // verify: both regimes pass, JSON report well-formed
    {
        const int rc = run("verify --alpha 0.8 --rho 0.5 --out cli_verify_small.json");
        expect(rc == 0, "verify small alpha exit 0");
        const auto text = slurp("cli_verify_small.json");
        expect(text.find("\"all_pass\": true") != std::string::npos, "small-alpha report all_pass");
        expect(text.find("deep_factorisation") != std::string::npos, "report lists factorisation");
        expect(text.find("\"config\"") != std::string::npos, "report embeds config");
    }
    {
        const int rc = run("verify --alpha 1.5 --rho 0.5 --out cli_verify_big.json");
        expect(rc == 0, "verify big alpha exit 0");
        const auto text = slurp("cli_verify_big.json");
        expect(text.find("\"all_pass\": true") != std::string::npos, "big-alpha report all_pass");
        expect(text.find("hypergeometric_identity") != std::string::npos,
               "report lists hypergeometric identity");
    }

    // verify with absurd quadrature tolerance: NoConvergence surfaces as exit 3
    {
        const int rc = run("verify --alpha 0.8 --rho 0.5 --quad-rel-tol 1e-20");
        expect(rc == 3, "corrupted tolerance exits 3 (NoConvergence)");
    }

    // identities standalone
    {
        const int rc = run("identities --alpha 1.5 --rho 0.5");
        expect(rc == 0, "identities exit 0");
        const auto text = slurp("cli_stdout.txt");
        expect(text.find("\"residual\"") != std::string::npos, "identities JSON has residual");
    }

    // simulate: determinism in the seed and worker-count invariance
    {
        const std::string base = "simulate two-sided-exit --alpha 0.8 --rho 0.5 --x 0.3 "
                                 "--n-paths 4000 --h 1e-3 --seed 5 --ks-bound 0.06";
        const int rc1 = run(base + " --workers 1 --out cli_sim1");
        const int rc2 = run(base + " --workers 3 --out cli_sim2");
        expect(rc1 == 0 && rc2 == 0, "simulate exits 0 under the loose bound");
        expect(slurp("cli_sim1_hist.csv") == slurp("cli_sim2_hist.csv"),
               "histogram CSV byte-identical across worker counts");
        const int rc3 = run(base + " --workers 2 --out cli_sim3");
        expect(rc3 == 0, "simulate repeat run");
        expect(slurp("cli_sim3_hist.csv") == slurp("cli_sim1_hist.csv"),
               "histogram CSV byte-identical across repeated runs");
    }

    if (g_failures == 0) std::cout << "all cli checks passed\n";
    return g_failures == 0 ? 0 : 1;
}
