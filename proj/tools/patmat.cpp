// patmat: command line front end over the library. Exit codes: 0 ok,
// 1 validation error, 2 property violation found.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "patmat/ackermann.hpp"
#include "patmat/bitmatrix.hpp"
#include "patmat/blocked_seq.hpp"
#include "patmat/bounds.hpp"
#include "patmat/extremal.hpp"
#include "patmat/greedy_bst.hpp"
#include "patmat/permutation.hpp"
#include "patmat/smooth_heap.hpp"

using json = nlohmann::json;
using namespace patmat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitViolation = 2;

Permutation parsePi(const std::string& spec) {
    // "231" or "2,3,1"
    std::vector<int> vals;
    if (spec.find(',') != std::string::npos) {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ','))
            vals.push_back(std::stoi(tok));
    } else {
        for (char ch : spec) {
            if (ch < '1' || ch > '9')
                throw std::invalid_argument("compact pattern syntax allows digits 1-9 only");
            vals.push_back(ch - '0');
        }
    }
    return Permutation(std::move(vals));
}

BitMatrix01 loadPattern(const std::string& spec) {
    if (const BitMatrix01* named = patterns::byName(spec))
        return *named;
    return loadM01(spec); // otherwise a file path
}

std::uint64_t ensureSeed(std::uint64_t seed, bool seedGiven) {
    if (seedGiven)
        return seed;
    const std::uint64_t fresh = std::random_device{}();
    std::cout << "seed: " << fresh << "\n";
    return fresh;
}

Permutation generate(const std::string& cls, int n, int k, std::uint64_t seed,
                     const std::string& piSpec) {
    if (cls == "sequential")
        return genSequential(n);
    if (cls == "preorder")
        return genPreorder(n, seed);
    if (cls == "postorder")
        return genPostorder(n, seed);
    if (cls == "deque")
        return genDeque(n, seed);
    if (cls == "k-increasing")
        return genKIncreasing(n, k, seed);
    if (cls == "pi-free")
        return genPiAvoiding(n, parsePi(piSpec), seed);
    throw std::invalid_argument("unknown input class: " + cls);
}

void writeOrPrint(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw std::invalid_argument("cannot write " + out);
    f << text;
}

std::string bseqDisplay(const BlockedSequence& u) {
    // [..] dead, (..) live, the notation used throughout
    std::string s;
    for (const auto& blk : u.blocks) {
        s += blk.live ? '(' : '[';
        for (std::size_t i = 0; i < blk.syms.size(); ++i) {
            if (i)
                s += ' ';
            s += std::to_string(blk.syms[i]);
        }
        s += blk.live ? ')' : ']';
    }
    return s;
}

std::uint64_t patternHash(const BitMatrix01& p) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(p.rows());
    mix(p.cols());
    for (const auto& [r, c] : p.cells())
        mix(static_cast<std::uint64_t>(r) << 32 | static_cast<std::uint32_t>(c));
    return h;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pattern containment and touch-matrix toolbox"};
    app.require_subcommand(1);

    // check-avoid
    auto* cAvoid = app.add_subcommand("check-avoid", "test permutation pattern avoidance");
    std::string caInput, caPi;
    bool caExpect = false;
    cAvoid->add_option("--s", caInput, "perm file")->required();
    cAvoid->add_option("--pi", caPi, "pattern, e.g. 231 or 2,3,1")->required();
    cAvoid->add_flag("--expect-avoid", caExpect, "exit 2 when the pattern occurs");

    // contains
    auto* cCont = app.add_subcommand("contains", "0-1 pattern containment");
    std::string coPat, coHost;
    int coTrimA = 0, coTrimB = 0;
    bool coTrimmed = false, coExpectFree = false;
    cCont->add_option("--pattern", coPat, "named pattern or m01 file")->required();
    cCont->add_option("--host", coHost, "m01 file")->required();
    cCont->add_flag("--trimmed", coTrimmed, "use trimmed containment");
    cCont->add_option("--trim-a", coTrimA, "leading columns to trim off the pattern");
    cCont->add_option("--trim-b", coTrimB, "trailing columns to trim off the pattern");
    cCont->add_flag("--expect-free", coExpectFree, "exit 2 when contained");

    // kron
    auto* cKron = app.add_subcommand("kron", "expand a permutation matrix");
    std::string krPi, krFactor = "hat", krOut;
    cKron->add_option("--pi", krPi, "permutation")->required();
    cKron->add_option("--factor", krFactor, "hat or vpair");
    cKron->add_option("--out", krOut, "m01 output file");

    // touch
    auto* cTouch = app.add_subcommand("touch", "touch matrix of a sorting run");
    std::string toAlgo = "greedy", toInput, toOut, toCounts;
    cTouch->add_option("--algo", toAlgo, "greedy or smooth");
    cTouch->add_option("--input", toInput, "perm file")->required();
    cTouch->add_option("--out", toOut, "m01 output file");
    cTouch->add_option("--counts", toCounts, "per-step touch counts, csv");

    // construct-u
    auto* cU = app.add_subcommand("construct-u", "build the recursive sequence family");
    int uI = 0, uJ = 0;
    long long uBudget = 10000000;
    std::string uOut;
    bool uStats = false;
    cU->add_option("--i", uI)->required();
    cU->add_option("--j", uJ)->required();
    cU->add_option("--budget", uBudget, "max total length");
    cU->add_option("--out", uOut, "bseq output file");
    cU->add_flag("--stats", uStats, "print measured statistics");

    // exf
    auto* cExf = app.add_subcommand("exf", "exact extremal value by search");
    std::string exPat, exCache;
    int exN = 0, exM = 0, exTrimA = 0, exTrimB = 0;
    bool exForce = false, exTrimmed = false;
    double exTime = 0.0;
    std::string exWitness;
    cExf->add_option("--pattern", exPat)->required();
    cExf->add_option("--n", exN)->required();
    cExf->add_option("--m", exM)->required();
    cExf->add_flag("--trimmed", exTrimmed);
    cExf->add_option("--trim-a", exTrimA);
    cExf->add_option("--trim-b", exTrimB);
    cExf->add_flag("--force", exForce, "lift the 8x8 guard");
    cExf->add_option("--time-limit", exTime, "seconds, 0 = unlimited");
    cExf->add_option("--cache", exCache, "JSON cache file (default $PATMAT_CACHE)");
    cExf->add_option("--witness-out", exWitness, "m01 file for the maximiser");

    // alpha
    auto* cAlpha = app.add_subcommand("alpha", "inverse table index");
    std::string alN, alM;
    int alT = 0;
    cAlpha->add_option("--n", alN)->required();
    cAlpha->add_option("--m", alM, "defaults to n");
    cAlpha->add_option("--t", alT, "use the proof variant with this exponent");

    // ack
    auto* cAck = app.add_subcommand("ack", "table value with saturation");
    int akI = 0;
    std::string akJ, akCap = "1000000";
    cAck->add_option("--i", akI)->required();
    cAck->add_option("--j", akJ)->required();
    cAck->add_option("--cap", akCap);

    // mu
    auto* cMu = app.add_subcommand("mu", "weight coefficient and its inequalities");
    std::string muC = "64";
    int muI = 0, muT = 0, muIMax = 30, muTMax = 30;
    bool muCheck = false;
    cMu->add_option("--C", muC);
    cMu->add_option("--i", muI);
    cMu->add_option("--t", muT);
    cMu->add_option("--i-max", muIMax);
    cMu->add_option("--t-max", muTMax);
    cMu->add_flag("--check", muCheck, "sweep both inequalities");

    // join
    auto* cJoin = app.add_subcommand("join", "corner join of two patterns");
    std::string jLeft, jRight, jOut;
    cJoin->add_option("--left", jLeft)->required();
    cJoin->add_option("--right", jRight)->required();
    cJoin->add_option("--out", jOut);

    // reduce
    auto* cRed = app.add_subcommand("reduce", "row/column pruning maps");
    std::string rOp, rInput, rOut;
    int rCount = 1;
    cRed->add_option("--op", rOp, "top-per-column, first-per-row or last-per-row")->required();
    cRed->add_option("--input", rInput, "m01 file")->required();
    cRed->add_option("--count", rCount, "ones to drop per row");
    cRed->add_option("--out", rOut);

    // bench
    auto* cBench = app.add_subcommand("bench", "run a sort and emit a JSONL record");
    std::string bClass = "preorder", bPi = "231", bAlgo = "greedy", bOut;
    int bN = 1024, bK = 3;
    std::uint64_t bSeed = 0;
    bool bSeedGiven = false;
    cBench->add_option("--class", bClass,
                       "sequential, preorder, postorder, deque, k-increasing, pi-free");
    cBench->add_option("--pi", bPi, "pattern for pi-free inputs and the avoidance verdict");
    cBench->add_option("--n", bN);
    cBench->add_option("--k", bK, "for k-increasing");
    cBench->add_option("--algo", bAlgo, "greedy or smooth");
    cBench->add_option("--seed", bSeed)->each([&](const std::string&) { bSeedGiven = true; });
    cBench->add_option("--out", bOut, "append JSONL here (default stdout)");

    // decompose
    auto* cDec = app.add_subcommand("decompose", "slab/block taxonomy of a host matrix");
    std::string dInput, dPat;
    int dB = 0, dG = 0, dTrimA = 0, dTrimB = 0;
    cDec->add_option("--input", dInput, "m01 file")->required();
    cDec->add_option("--pattern", dPat, "base pattern (named or m01 file)")->required();
    cDec->add_option("--trim-a", dTrimA);
    cDec->add_option("--trim-b", dTrimB);
    cDec->add_option("--B", dB, "slab width")->required();
    cDec->add_option("--G", dG, "block height")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cAvoid) {
            const Permutation s = loadPermFile(caInput);
            const bool ok = avoids(s, parsePi(caPi));
            std::cout << "avoids: " << (ok ? "true" : "false") << "\n";
            return !ok && caExpect ? kExitViolation : kExitOk;
        }

        if (*cCont) {
            const BitMatrix01 pat = loadPattern(coPat);
            const BitMatrix01 host = loadM01(coHost);
            bool found;
            if (coTrimmed || coTrimA || coTrimB)
                found = containsTrimmed(trim(pat, coTrimA, coTrimB), host);
            else
                found = contains(pat, host);
            std::cout << "contains: " << (found ? "true" : "false") << "\n";
            return found && coExpectFree ? kExitViolation : kExitOk;
        }

        if (*cKron) {
            const BitMatrix01 p = permutationMatrix(parsePi(krPi));
            const BitMatrix01 out = krFactor == "vpair" ? kronVpair(p) : kronHat(p);
            if (krFactor != "hat" && krFactor != "vpair")
                throw std::invalid_argument("factor must be hat or vpair");
            writeOrPrint(krOut, toM01(out));
            return kExitOk;
        }

        if (*cTouch) {
            const Permutation s = loadPermFile(toInput);
            TouchMatrix t{BitMatrix01(1, 1), {}, 0};
            if (toAlgo == "greedy")
                t = greedyTouchMatrix(s);
            else if (toAlgo == "smooth")
                t = smoothHeapSort(s).touch;
            else
                throw std::invalid_argument("algo must be greedy or smooth");
            writeOrPrint(toOut, toM01(t.touched));
            if (!toCounts.empty()) {
                std::ostringstream csv;
                csv << "step,touches\n";
                for (std::size_t i = 0; i < t.perStep.size(); ++i)
                    csv << i + 1 << "," << t.perStep[i] << "\n";
                writeOrPrint(toCounts, csv.str());
            }
            std::cout << "total touches: " << t.total << "\n";
            return kExitOk;
        }

        if (*cU) {
            const BlockedSequence u = buildU(uI, uJ, uBudget);
            if (uOut.empty())
                std::cout << bseqDisplay(u) << "\n";
            else
                saveBseq(u, uOut);
            if (uStats) {
                const UStats st = stats(u, uI, uJ);
                std::cout << "n: " << st.n << "\nlive blocks: " << st.liveBlocks
                          << "\ndead blocks: " << st.deadBlocks << "\nlength: " << st.length
                          << "\n";
            }
            return kExitOk;
        }

        if (*cExf) {
            const BitMatrix01 pat = loadPattern(exPat);
            json cache = json::object();
            std::string cachePath = exCache;
            if (cachePath.empty())
                if (const char* env = std::getenv("PATMAT_CACHE"))
                    cachePath = env;
            std::string key;
            {
                std::ostringstream k;
                k << std::hex << patternHash(pat) << std::dec << ":" << exTrimA << ":"
                  << exTrimB << ":" << (exTrimmed || exTrimA || exTrimB) << ":" << exN << ":"
                  << exM;
                key = k.str();
            }
            if (!cachePath.empty()) {
                std::ifstream in(cachePath);
                if (in)
                    in >> cache;
                if (cache.contains(key) && cache[key]["exact"].get<bool>()) {
                    std::cout << "ex: " << cache[key]["value"].get<long long>()
                              << " (cached)\n";
                    return kExitOk;
                }
            }
            ExOptions opt;
            opt.force = exForce;
            opt.timeLimitSec = exTime;
            ExResult res(exTrimmed || exTrimA || exTrimB
                             ? exExact(trim(pat, exTrimA, exTrimB), exN, exM, opt)
                             : exExact(pat, exN, exM, opt));
            std::cout << "ex: " << res.value << (res.exact ? "" : " (search timed out)")
                      << "\n";
            if (!exWitness.empty())
                saveM01(res.witness, exWitness);
            if (!cachePath.empty()) {
                cache[key] = {{"value", res.value}, {"exact", res.exact}, {"n", exN},
                              {"m", exM}};
                std::ofstream outF(cachePath);
                outF << cache.dump(1) << "\n";
            }
            return kExitOk;
        }

        if (*cAlpha) {
            const BigInt n(alN);
            const BigInt m = alM.empty() ? n : BigInt(alM);
            const int v = alT > 0 ? alphaProof(n, m, alT) : alpha(n, m);
            std::cout << "alpha: " << v << "\n";
            return kExitOk;
        }

        if (*cAck) {
            const SatValue v = ack(akI, BigInt(akJ), BigInt(akCap));
            if (v.overflow)
                std::cout << "ack: >= " << akCap << " (saturated)\n";
            else
                std::cout << "ack: " << v.value << "\n";
            return kExitOk;
        }

        if (*cMu) {
            if (muCheck) {
                const auto bad = checkMuConstraints(BigInt(muC), muIMax, muTMax);
                for (const auto& b : bad)
                    std::cout << "violation: i=" << b.i << " t=" << b.t
                              << " inequality=" << b.constraint << "\n";
                std::cout << "violations: " << bad.size() << "\n";
                return bad.empty() ? kExitOk : kExitViolation;
            }
            if (muI < 1 || muT < 2)
                throw std::invalid_argument("mu needs --i and --t (or --check)");
            std::cout << "mu: " << mu(BigInt(muC), muI, muT) << "\n";
            return kExitOk;
        }

        if (*cJoin) {
            const BitMatrix01 out = keszeghJoin(loadPattern(jLeft), loadPattern(jRight));
            writeOrPrint(jOut, toM01(out));
            return kExitOk;
        }

        if (*cRed) {
            const BitMatrix01 a = loadM01(rInput);
            BitMatrix01 out(1, 1);
            if (rOp == "top-per-column")
                out = dropTopOfEachColumn(a);
            else if (rOp == "first-per-row")
                out = dropLeadingOnesPerRow(a, rCount);
            else if (rOp == "last-per-row")
                out = dropTrailingOnesPerRow(a, rCount);
            else
                throw std::invalid_argument("unknown reduce op: " + rOp);
            writeOrPrint(rOut, toM01(out));
            return kExitOk;
        }

        if (*cBench) {
            const std::uint64_t seed = ensureSeed(bSeed, bSeedGiven);
            const Permutation s = generate(bClass, bN, bK, seed, bPi);
            const auto t0 = std::chrono::steady_clock::now();
            TouchMatrix t{BitMatrix01(1, 1), {}, 0};
            if (bAlgo == "greedy")
                t = greedyTouchMatrix(s);
            else if (bAlgo == "smooth")
                t = smoothHeapSort(s).touch;
            else
                throw std::invalid_argument("algo must be greedy or smooth");
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const TrimmedPattern q = trim(kronHat(permutationMatrix(parsePi(bPi))), 0, 0);
            const bool qFree = !containsTrimmed(q, t.touched);
            json rec = {{"timestamp", std::chrono::duration_cast<std::chrono::seconds>(
                                          std::chrono::system_clock::now().time_since_epoch())
                                          .count()},
                        {"command", "bench"},
                        {"seed", seed},
                        {"n", bN},
                        {"class", bClass},
                        {"pi", bPi},
                        {"algo", bAlgo},
                        {"total_touches", t.total},
                        {"touch_weight", t.touched.weight()},
                        {"q_free", qFree},
                        {"wall_sec", wall}};
            if (bOut.empty()) {
                std::cout << rec.dump() << "\n";
            } else {
                std::ofstream f(bOut, std::ios::app);
                f << rec.dump() << "\n";
            }
            return kExitOk;
        }

        if (*cDec) {
            const BitMatrix01 a = loadM01(dInput);
            const TrimmedPattern q = trim(loadPattern(dPat), dTrimA, dTrimB);
            const DecompositionReport rep = decompose(a, q, dB, dG);
            json out = {{"B", rep.B},
                        {"G", rep.G},
                        {"input_pattern_free", rep.inputPatternFree},
                        {"empty_rows", rep.emptyRows},
                        {"local", rep.local},
                        {"first", rep.first},
                        {"last", rep.last},
                        {"heavy_middle", rep.heavyMiddle},
                        {"light_first", rep.lightFirst},
                        {"light_middle", rep.lightMiddle},
                        {"light_last", rep.lightLast},
                        {"global_rows", rep.globalRows},
                        {"slab_local_rows", rep.slabLocalRows}};
            std::cout << out.dump(1) << "\n";
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
