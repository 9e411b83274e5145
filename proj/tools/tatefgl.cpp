#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tatefgl/cli.hpp"

int main(int argc, char** argv) {
    using namespace tatefgl;
    CLI::App app{"Formal group law invariants and E_n orientation obstructions"};
    app.set_help_all_flag("--help-all");

    std::string command;
    std::string config_path;
    std::string n_str;
    RunConfig flags;
    int x_bound = 0;
    int t_bound = 0;
    int coefficient = 0;

    app.add_option("command", command,
                   "obstruct | jn | frobenius | sharp | rigidity | fgl | bm-experiment | golden")
        ->required();
    app.add_option("--config", config_path, "JSON file with RunConfig fields; flags override it");
    auto* o_prime = app.add_option("--prime,-p", flags.prime, "prime");
    auto* o_n = app.add_option("--n", n_str, "E_n level, an integer or inf");
    auto* o_orient = app.add_option("--orientation", flags.orientation, "todd-p-typical | identity");
    auto* o_ring = app.add_option("--ring", flags.ring, "todd | universal | additive | fp");
    auto* o_x = app.add_option("--x-bound,--pow-choice", x_bound, "largest x-degree reported");
    auto* o_t = app.add_option("--t-bound", t_bound, "largest t-degree reported");
    auto* o_out = app.add_option("--output", flags.output, "text | json");
    auto* o_d = app.add_option("--d", flags.d, "JN index d");
    auto* o_order = app.add_option("--order", flags.order, "rigidity order");
    auto* o_k = app.add_option("--k-max", flags.k_max, "largest power x^k in the experiment");
    auto* o_w = app.add_option("--weights", flags.weights, "sharp coordinate weights")->delimiter(',');
    auto* o_c = app.add_option("--coefficient", coefficient, "also print the x^k coefficient (obstruct)");
    auto* o_in = app.add_option("--input", flags.input, "FGL JSON to import (fgl)");
    auto* o_path = app.add_option("--path", flags.path, "golden output file or directory");
    auto* o_case = app.add_option("--case", flags.golden_case, "golden case name (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    RunConfig c;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw error("cannot read " + config_path);
            c = config_from_json(json::parse(in));
        }
        c.command = command;
        if (o_prime->count()) c.prime = flags.prime;
        if (o_n->count()) c.n = parse_n(n_str);
        if (o_orient->count()) c.orientation = flags.orientation;
        if (o_ring->count()) c.ring = flags.ring;
        if (o_x->count()) c.x_bound = x_bound;
        if (o_t->count()) c.t_bound = t_bound;
        if (o_out->count()) c.output = flags.output;
        if (o_d->count()) c.d = flags.d;
        if (o_order->count()) c.order = flags.order;
        if (o_k->count()) c.k_max = flags.k_max;
        if (o_w->count()) c.weights = flags.weights;
        if (o_c->count()) c.coefficient = coefficient;
        if (o_in->count()) c.input = flags.input;
        if (o_path->count()) c.path = flags.path;
        if (o_case->count()) c.golden_case = flags.golden_case;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return run(c, std::cout, std::cerr);
}
