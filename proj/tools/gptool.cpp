// gptool: build models, joint state spaces and CHSH experiments from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gpt/io.hpp"
#include "gpt/verify.hpp"

namespace {

using namespace gpt;

enum ExitCode { Ok = 0, CheckFailed = 1, BadInput = 2, OverBudget = 3 };

struct Config {
    std::string a = "boxworld";
    std::string b = "boxworld";
    std::string kind = "genmax";
    std::string mode = "auto";
    std::string method = "auto";
    double eps = 1e-9;
    std::uint64_t seed = 1;
    std::size_t samples = 1000;
    std::size_t restrictions = 5;
    std::string sweep;
    std::string out;
    std::size_t budget = 50000;
    bool vertices = false;

    Settings settings() const { return {eps, budget}; }
};

void emit(const Config& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        throw InvalidInput("cannot write " + c.out);
    }
    f << text;
}

bool want_exact(const Config& c, const std::vector<const AnySystem*>& systems)
{
    bool all_exact = true;
    for (const auto* s : systems) {
        all_exact = all_exact && s->index() == 0;
    }
    if (c.mode == "exact" && !all_exact) {
        throw InvalidInput("exact mode requested for a model with irrational coordinates");
    }
    return c.mode == "exact" || (c.mode == "auto" && all_exact);
}

template <class T>
GptSystem<T> as(const AnySystem& s, const Settings& cfg)
{
    return std::visit(
        [&](const auto& sys) -> GptSystem<T> {
            using From = std::decay_t<decltype(sys)>;
            if constexpr (is_exact_v<T> && std::is_same_v<From, GptSystem<double>>) {
                throw InvalidInput("cannot convert an approximate system to exact arithmetic");
            } else {
                return convert_system<T>(sys, cfg);
            }
        },
        s);
}

template <class T>
std::string vec_text(const Vector<T>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + NumTraits<T>::format(v[i]);
    }
    return s + ")";
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

Enumeration enumeration(const Config& c)
{
    if (c.method == "lp") {
        return Enumeration::Skip;
    }
    return c.method == "vertices" ? Enumeration::Required : Enumeration::BestEffort;
}

std::string count_text(const JointSystem<Rational>& j) { return j.enumerated() ? std::to_string(j.vertices().size()) : "not enumerated"; }
std::string count_text(const JointSystem<double>& j) { return j.enumerated() ? std::to_string(j.vertices().size()) : "not enumerated"; }

// model

template <class T>
std::string model_report(const GptSystem<T>& s, bool vertices, const Settings& cfg)
{
    std::ostringstream os;
    os << "label: " << s.label() << '\n'
       << "mode: " << (is_exact_v<T> ? "exact" : "approx") << '\n'
       << "dim: " << s.dim() << '\n'
       << "states: " << s.states().size() << '\n'
       << "effects: " << s.effects().size() << '\n'
       << "dichotomic_effects: " << dichotomic_observables(s, cfg).size() << '\n'
       << "unrestricted: " << yes_no(is_unrestricted(s, cfg)) << '\n';
    if (vertices) {
        os << "unit: " << vec_text(s.unit()) << '\n';
        for (const auto& w : s.states().vertices()) {
            os << "state " << vec_text(w) << '\n';
        }
        for (const auto& e : s.effects().vertices()) {
            os << "effect " << vec_text(e) << '\n';
        }
    }
    return os.str();
}

int cmd_model(const Config& c, const std::string& id)
{
    const auto cfg = c.settings();
    const auto sys = load_model(id, cfg);
    const bool exact = want_exact(c, {&sys});
    std::string report;
    std::string doc;
    if (exact) {
        const auto s = as<Rational>(sys, cfg);
        report = model_report(s, c.vertices, cfg);
        doc = write_system(s);
    } else {
        const auto s = as<double>(sys, cfg);
        report = model_report(s, c.vertices, cfg);
        doc = write_system(s);
    }
    std::cout << report;
    if (!c.out.empty()) {
        emit(c, doc);
    }
    return Ok;
}

// tensor

template <class T>
int tensor_report(const Config& c, const GptSystem<T>& a, const GptSystem<T>& b)
{
    const auto cfg = c.settings();
    const auto h = tensor_hierarchy(a, b, cfg, Enumeration::Required);
    std::cout << "a: " << a.label() << '\n'
              << "b: " << b.label() << '\n'
              << "mode: " << (is_exact_v<T> ? "exact" : "approx") << '\n'
              << "dim: " << h.product.dim() << '\n'
              << "product: " << count_text(h.product) << '\n'
              << "max_unrestricted: " << count_text(h.max_unrestricted) << '\n'
              << "genmax: " << count_text(h.generalized) << '\n'
              << "max: " << count_text(h.max) << '\n'
              << "product <= max_unrestricted: " << yes_no(h.product_in_max_unrestricted) << '\n'
              << "max_unrestricted <= genmax: " << yes_no(h.max_unrestricted_in_generalized) << '\n'
              << "genmax <= max: " << yes_no(h.generalized_in_max) << '\n';
    if (!c.out.empty()) {
        const auto kind = parse_tensor_kind(c.kind);
        const auto& j = kind == TensorKind::ProductStates ? h.product
                        : kind == TensorKind::MaxTensor   ? h.max
                                                          : h.generalized;
        emit(c, write_joint(j));
    }
    return h.holds() ? Ok : CheckFailed;
}

int cmd_tensor(const Config& c)
{
    const auto cfg = c.settings();
    const auto a = load_model(c.a, cfg);
    const auto b = load_model(c.b, cfg);
    if (want_exact(c, {&a, &b})) {
        return tensor_report(c, as<Rational>(a, cfg), as<Rational>(b, cfg));
    }
    return tensor_report(c, as<double>(a, cfg), as<double>(b, cfg));
}

// chsh

template <class T>
int chsh_report(const Config& c, const GptSystem<T>& a, const GptSystem<T>& b)
{
    const auto cfg = c.settings();
    const auto j = make_tensor(parse_tensor_kind(c.kind), a, b, cfg, enumeration(c));
    emit(c, write_chsh_report(j, chsh_max(j, cfg)));
    return Ok;
}

template <class T>
std::string sweep_csv(const Config& c, const std::vector<Rational>& lambdas)
{
    const auto cfg = c.settings();
    const auto kind = parse_tensor_kind(c.kind);
    std::string csv = "lambda,S\n";
    for (const auto& l : lambdas) {
        const auto s = noisy_boxworld<T>(convert_scalar<T>(l), cfg);
        const auto j = make_tensor(kind, s, s, cfg, enumeration(c));
        csv += l.str() + "," + NumTraits<T>::format(chsh_max(j, cfg).value) + "\n";
    }
    return csv;
}

int cmd_chsh(const Config& c)
{
    const auto cfg = c.settings();
    if (!c.sweep.empty()) {
        std::vector<Rational> lambdas;
        std::stringstream ss(c.sweep);
        for (std::string item; std::getline(ss, item, ',');) {
            lambdas.push_back(parse_rational(item));
        }
        if (c.mode == "approx") {
            emit(c, sweep_csv<double>(c, lambdas));
        } else {
            emit(c, sweep_csv<Rational>(c, lambdas));
        }
        return Ok;
    }
    const auto a = load_model(c.a, cfg);
    const auto b = load_model(c.b, cfg);
    if (want_exact(c, {&a, &b})) {
        return chsh_report(c, as<Rational>(a, cfg), as<Rational>(b, cfg));
    }
    return chsh_report(c, as<double>(a, cfg), as<double>(b, cfg));
}

// verify

template <class T>
int verify_report(const Config& c, const GptSystem<T>& a, const GptSystem<T>& b)
{
    const auto cfg = c.settings();
    Rng rng(c.seed);
    std::ostringstream os;
    std::ostringstream dump;
    bool ok = true;

    const auto g = generalized_max_tensor(a, b, cfg, Enumeration::BestEffort);
    const auto eq = conditional_equivalence(g, rng, c.samples, cfg);
    const bool eq_ok = eq.disagreements == 0;
    os << "conditional_equivalence: samples=" << eq.samples << " inside=" << eq.inside << " outside=" << eq.outside
       << " disagreements=" << eq.disagreements << ' ' << (eq_ok ? "PASS" : "FAIL") << '\n';
    if (!eq_ok) {
        dump << "counterexample joint " << vec_text(*eq.counterexample) << " member="
             << yes_no(eq.counterexample_member) << " valid_conditionals=" << yes_no(!eq.counterexample_member)
             << '\n';
    }
    ok = ok && eq_ok;

    const auto col = collapse_check(a, b, cfg, Enumeration::BestEffort);
    if (!col.applicable) {
        os << "collapse: not applicable\n";
    } else {
        os << "collapse: genmax=" << (col.generalized_vertices ? std::to_string(*col.generalized_vertices) : "?")
           << " max_unrestricted=" << (col.max_vertices ? std::to_string(*col.max_vertices) : "?") << ' '
           << (col.holds ? "PASS" : "FAIL") << '\n';
        if (!col.holds) {
            dump << "collapse: genmax(" << a.label() << ", " << b.label()
                 << ") differs from the maximal tensor product of the unrestricted systems\n";
        }
        ok = ok && col.holds;
    }

    for (std::size_t i = 0; i < c.restrictions; ++i) {
        const auto la = random_restriction(a, rng, cfg);
        const auto lb = random_restriction(b, rng, cfg);
        const auto r = correlation_bound_check(a, b, la, lb, cfg, Enumeration::BestEffort);
        const bool pass = r.bound_holds && r.identity_holds;
        os << "bound[" << i << "]: generalized=" << NumTraits<T>::format(r.s_generalized)
           << " unrestricted=" << NumTraits<T>::format(r.s_unrestricted)
           << " restricted_max=" << NumTraits<T>::format(r.s_restricted_max) << ' ' << (pass ? "PASS" : "FAIL")
           << '\n';
        if (!pass) {
            dump << "bound[" << i << "] restriction maps:\n";
            for (const auto* l : {&la, &lb}) {
                for (std::size_t row = 0; row < l->rows(); ++row) {
                    dump << "  " << vec_text(l->row_vector(row)) << '\n';
                }
                dump << '\n';
            }
        }
        ok = ok && pass;
    }
    os << "result: " << (ok ? "PASS" : "FAIL") << '\n';
    emit(c, os.str());
    if (!ok) {
        std::cerr << dump.str();
    }
    return ok ? Ok : CheckFailed;
}

int cmd_verify(const Config& c)
{
    const auto cfg = c.settings();
    const auto a = load_model(c.a, cfg);
    const auto b = load_model(c.b, cfg);
    if (want_exact(c, {&a, &b})) {
        return verify_report(c, as<Rational>(a, cfg), as<Rational>(b, cfg));
    }
    return verify_report(c, as<double>(a, cfg), as<double>(b, cfg));
}

void add_common(CLI::App* app, Config& c)
{
    app->add_option("--mode", c.mode, "Arithmetic: auto picks exact when every model is rational")
        ->check(CLI::IsMember({"auto", "exact", "approx"}));
    app->add_option("--eps", c.eps, "Tolerance for approx mode")->check(CLI::PositiveNumber);
    app->add_option("--vertex-budget", c.budget, "Abort enumerations that exceed this many vertices");
    app->add_option("--out", c.out, "Write the result document to this file");
}

void add_pair(CLI::App* app, Config& c)
{
    app->add_option("--a", c.a, "Model name or system file for party A");
    app->add_option("--b", c.b, "Model name or system file for party B");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalized probabilistic theories: restricted effects, tensor products and CHSH"};
    app.require_subcommand(1);
    Config c;
    std::string model_id;

    auto* model = app.add_subcommand("model", "Describe a single system");
    model->add_option("id", model_id, "Model name or system file")->required();
    model->add_flag("--vertices", c.vertices, "List unit, state and effect vertices");
    add_common(model, c);

    auto* tensor = app.add_subcommand("tensor", "Vertex counts and inclusions of the joint state spaces");
    add_pair(tensor, c);
    tensor->add_option("--kind", c.kind, "Joint space written by --out")
        ->check(CLI::IsMember({"product", "genmax", "max"}));
    add_common(tensor, c);

    auto* chsh = app.add_subcommand("chsh", "Maximal CHSH value and a witness");
    add_pair(chsh, c);
    chsh->add_option("--kind", c.kind, "Joint state space")->check(CLI::IsMember({"product", "genmax", "max"}));
    chsh->add_option("--method", c.method, "vertices, lp, or auto (vertices within the budget, else lp)")
        ->check(CLI::IsMember({"auto", "vertices", "lp"}));
    chsh->add_option("--sweep-lambda", c.sweep, "Comma-separated noise levels for noisy boxworld on both sides");
    add_common(chsh, c);

    auto* verify = app.add_subcommand("verify", "Sampled checks of the conditional-state, collapse and bound theorems");
    add_pair(verify, c);
    verify->add_option("--seed", c.seed, "Random seed");
    verify->add_option("--samples", c.samples, "Joint vectors for the conditional-state check");
    verify->add_option("--restrictions", c.restrictions, "Random bijective restrictions for the bound check");
    add_common(verify, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : BadInput;
    }

    try {
        if (*model) {
            return cmd_model(c, model_id);
        }
        if (*tensor) {
            return cmd_tensor(c);
        }
        if (*chsh) {
            return cmd_chsh(c);
        }
        return cmd_verify(c);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return OverBudget;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadInput;
    } catch (const InvalidRestriction& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadInput;
    } catch (const InvalidEffect& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadInput;
    } catch (const SingularMap& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return CheckFailed;
    }
}
