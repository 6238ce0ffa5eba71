#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lepage/commands.hpp"
#include "lepage/errors.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lepage::UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact variational bicomplex computations on a single chart"};
    app.require_subcommand(1, 1);

    lepage::CommandOptions opts;
    std::string spec_path, out_path, format = "text";
    int order_cap = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_path, "DSL problem file");
        sub->add_option("--format", format, "text, latex or structured")
            ->check(CLI::IsMember({"text", "latex", "structured"}));
        sub->add_option("--order-cap", order_cap, "jet-order cap")->check(CLI::Range(1, 12));
        sub->add_flag("--assert-zero", opts.assert_zero, "exit 2 unless the checked quantity vanishes");
        sub->add_option("--out", out_path, "write the report here instead of stdout");
    };

    auto* el = app.add_subcommand("el", "Euler-Lagrange form of a Lagrangian");
    common(el);
    el->add_option("--lagrangian", opts.lagrangian);

    auto* lp = app.add_subcommand("lepage", "a Lepage equivalent and its Lepage properties");
    common(lp);
    lp->add_option("--lagrangian", opts.lagrangian);
    lp->add_option("--variant", opts.variant, "principal, pc, caratheodory, caratheodory2, fundamental, extend");

    auto* vt = app.add_subcommand("vainberg-tonti", "Lagrangian of a source form");
    common(vt);
    vt->add_option("--form", opts.form);

    auto* cl = app.add_subcommand("closure", "d of the extended Lepage form");
    common(cl);
    cl->add_option("--lagrangian", opts.lagrangian);
    cl->add_option("--construction", opts.construction);

    auto* hc = app.add_subcommand("homotopy-check", "d_h P + P d_h = id on a form");
    common(hc);
    hc->add_option("--form", opts.form);
    hc->add_option("--variant", opts.homotopy, "tilde or hat");

    auto* bc = app.add_subcommand("bicomplex-check", "d_h^2, d_v^2 and anticommutation on the forms");
    common(bc);
    bc->add_option("--form", opts.form);

    auto* gp = app.add_subcommand("gamma-prolong", "prolonged connection coefficients");
    common(gp);
    gp->add_option("--level", opts.level);

    auto* pn = app.add_subcommand("p-nabla", "the projection p_nabla on coordinate vectors");
    common(pn);
    pn->add_option("--k", opts.k)->check(CLI::Range(2, 6));

    auto* cj = app.add_subcommand("conjecture", "P_nabla homotopy defect or coefficient fit");
    common(cj);
    cj->add_option("action", opts.action)->required()->check(CLI::IsMember({"defect", "fit"}));
    cj->add_option("--form", opts.form);
    cj->add_option("--rule", opts.rule, "printed or appendix");
    cj->add_option("--generators", opts.generators)->delimiter(',');
    cj->add_option("--held-out", opts.held_out)->delimiter(',');
    cj->add_option("--max-r", opts.max_r)->check(CLI::Range(0, 8));

    auto* ap = app.add_subcommand("appendix-a", "replay the worked P_nabla example");
    common(ap);
    ap->add_option("--m", opts.m)->check(CLI::Range(2, 4));
    ap->add_option("--n", opts.n)->check(CLI::Range(1, 3));
    ap->add_flag("--flat", opts.flat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : lepage::kExitUsage;
    }

    try {
        opts.command = app.get_subcommands().front()->get_name();
        opts.format = lepage::format_from_name(format);
        if (order_cap > 0) opts.order_cap = order_cap;
        if (!spec_path.empty()) opts.spec = slurp(spec_path);
        lepage::CommandResult res = lepage::run_command(opts);
        if (out_path.empty()) {
            std::cout << res.output;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw lepage::UsageError("cannot write '" + out_path + "'");
            out << res.output;
        }
        return res.exit_code;
    } catch (const lepage::UsageError& e) {
        std::cerr << "lepage-kit: " << e.what() << "\n";
        return lepage::kExitUsage;
    } catch (const lepage::Error& e) {
        std::cerr << "lepage-kit: " << (spec_path.empty() ? "" : spec_path + ":") << e.what() << "\n";
        return lepage::kExitInput;
    }
}
