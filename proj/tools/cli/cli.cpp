#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "jetdiff/error.hpp"
#include "jetdiff/linalg.hpp"
#include "jetdiff/parse.hpp"

namespace jetdiff::cli {

namespace {

std::vector<std::string> strings(const std::vector<Rational>& values) {
    std::vector<std::string> out;
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

std::vector<std::string> strings(const std::vector<Polynomial>& values) {
    std::vector<std::string> out;
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

Json matrix_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(strings(m.row(r)));
    return rows;
}

Json labels_json(const std::vector<IrrepLabel>& labels) {
    Json out = Json::array();
    for (const auto& l : labels) out.push_back({{"highest_weight", l.highest_weight}, {"multiplicity", l.multiplicity}});
    return out;
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

// Right-aligned columns for rational matrices.
std::string matrix_table(const RationalMatrix& m) {
    std::vector<std::size_t> width(m.cols(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) width[c] = std::max(width[c], m.at(r, c).str().size());
    }
    std::ostringstream os;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << "  [";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            os << (c ? "  " : " ") << std::setw(static_cast<int>(width[c])) << m.at(r, c).str();
        }
        os << " ]\n";
    }
    return os.str();
}

std::string basis_table(const InvariantSpace& space) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "  #" << std::setw(10) << "weight" << "element\n";
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        os << "  " << std::setw(4) << i << std::setw(10) << ("(" + join(space.weights[i]) + ")")
           << space.basis[i].str() << "\n";
    }
    return os.str();
}

std::string labels_text(const std::vector<IrrepLabel>& labels) {
    std::vector<std::string> parts;
    for (const auto& l : labels) parts.push_back("(" + join(l.highest_weight) + ")x" + std::to_string(l.multiplicity));
    return join(parts, " + ");
}

std::string spec_name(const Command& c) {
    return "r" + std::to_string(c.rank) + "_k" + std::to_string(c.order) + "_m" + std::to_string(c.weight);
}

// FNV-1a, for stable golden file names derived from free-form map text.
std::string short_hash(const std::string& s) {
    std::uint32_t h = 2166136261U;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 16777619U;
    }
    std::ostringstream os;
    os << std::hex << std::setw(8) << std::setfill('0') << h;
    return os.str();
}

std::vector<Rational> point_or_origin(const Command& c, int rank) {
    if (!c.point) return std::vector<Rational>(static_cast<std::size_t>(rank));
    auto p = parse_point(*c.point);
    if (p.size() != static_cast<std::size_t>(rank)) {
        throw UsageError("--point needs " + std::to_string(rank) + " coordinates");
    }
    return p;
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const int d = std::stoi(text);
            return {d, d};
        }
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("--d expects N or LO:HI, got '" + text + "'");
    }
}

struct Rendered {
    Json json;
    std::string text;
    std::string golden_name;
};

std::optional<std::vector<IrrepLabel>> maybe_decompose(const InvariantSpace& space) {
    if (space.spec.rank() != 2) return std::nullopt;
    return decompose(space);
}

Rendered render_basis(const Command& c) {
    const JetSpec spec(c.rank, c.order, c.allow_large);
    const InvariantSpace space = invariant_basis(spec, c.weight);
    const auto labels = maybe_decompose(space);
    std::ostringstream os;
    os << "E_{" << c.order << "," << c.weight << "} for rank " << c.rank << ": dimension " << space.dimension() << "\n";
    os << basis_table(space);
    if (labels) os << "decomposition: " << labels_text(*labels) << "\n";
    return {to_json(space, labels), os.str(), "basis_" + spec_name(c)};
}

Rendered render_dim(const Command& c) {
    const JetSpec spec(c.rank, c.order, c.allow_large);
    const InvariantSpace space = invariant_basis(spec, c.weight);
    std::size_t modular = 0;
    if (c.weight > 0) modular = rank_modular_check(invariance_system(spec, c.weight).matrix);
    Json j;
    j["spec"] = {{"rank", c.rank}, {"order", c.order}};
    j["weight"] = c.weight;
    j["dimension"] = space.dimension();
    j["monomials"] = space.monomials.size();
    j["constraint_rows"] = space.constraint_rows;
    j["exact_rank"] = space.constraint_rank;
    j["modular_rank"] = modular;
    std::ostringstream os;
    os << "dim E_{" << c.order << "," << c.weight << "} (rank " << c.rank << ") = " << space.dimension() << "\n"
       << "  monomials " << space.monomials.size() << ", constraints " << space.constraint_rows << "x"
       << space.constraint_cols << ", exact rank " << space.constraint_rank << ", modular rank " << modular << "\n";
    return {j, os.str(), "dim_" + spec_name(c)};
}

Rendered render_decompose(const Command& c) {
    const JetSpec spec(c.rank, c.order, c.allow_large);
    const InvariantSpace space = invariant_basis(spec, c.weight);
    const auto labels = decompose(space);
    Json j;
    j["spec"] = {{"rank", c.rank}, {"order", c.order}};
    j["weight"] = c.weight;
    j["dimension"] = space.dimension();
    j["decomposition"] = labels_json(labels);
    Json hw = Json::array();
    for (const auto& v : highest_weight_vectors(space)) hw.push_back({{"weight", v.weight}, {"vector", v.vector.str()}});
    j["highest_weight_vectors"] = hw;
    std::ostringstream os;
    os << "E_{" << c.order << "," << c.weight << "} (rank " << c.rank << ", dimension " << space.dimension()
       << ") = " << labels_text(labels) << "\n";
    for (const auto& v : highest_weight_vectors(space)) {
        os << "  highest weight (" << join(v.weight) << "): " << v.vector.str() << "\n";
    }
    return {j, os.str(), "decompose_" + spec_name(c)};
}

Rendered render_verify(const Command& c) {
    const JetSpec spec(c.rank, c.order, c.allow_large);
    const Polynomial q = parse_polynomial(c.polynomial, spec);
    const InvarianceVerdict v = verify_invariance(q, spec);
    Json j;
    j["polynomial"] = q.str();
    std::ostringstream os;
    switch (v.status) {
        case InvarianceVerdict::Status::Invariant:
            j["status"] = "invariant";
            j["weight"] = v.weight;
            os << q.str() << ": invariant of weight " << v.weight << "\n";
            break;
        case InvarianceVerdict::Status::NotInvariant:
            j["status"] = "not_invariant";
            j["weight"] = v.weight;
            j["residual"] = v.residual.str();
            j["unipotent_residual"] = v.unipotent_residual.str();
            os << q.str() << ": not invariant\n  residual           " << v.residual.str()
               << "\n  residual at a1 = 1 " << v.unipotent_residual.str() << "\n";
            break;
        case InvarianceVerdict::Status::MixedWeights:
            j["status"] = "mixed_weights";
            j["weights"] = v.weights;
            os << q.str() << ": not weighted-homogeneous (weights " << join(v.weights) << ")\n";
            break;
    }
    return {j, os.str(), "verify_" + short_hash(c.polynomial)};
}

Rendered render_transition(const Command& c) {
    const JetSpec spec(c.rank, c.order, c.allow_large);
    const TargetMap psi = parse_map(c.map, c.rank);
    const auto x = point_or_origin(c, c.rank);
    const InvariantSpace canonical = invariant_basis(spec, c.weight);

    InvariantSpace space = canonical;
    std::optional<std::vector<IsotypicBlock>> partition;
    if (c.rank == 2) {
        partition = isotypic_partition(canonical);
        if (!partition) std::tie(space, partition) = adapted_space(canonical);
    }
    const TransitionMatrix t = differential_transition(space, psi, x);
    Json j = to_json(t);
    std::ostringstream os;
    os << "transition of E_{" << c.order << "," << c.weight << "} (rank " << c.rank << ") under " << psi.str()
       << " at (" << join(strings(x)) << ")\n";
    os << basis_table(space) << "matrix (columns are images of basis elements):\n" << matrix_table(t.matrix);
    if (partition) {
        const SplittingVerdict v = splitting_check(t, *partition);
        const ClosureVerdict closure = s_block_closure(space, psi, x);
        j["splitting"] = to_json(v);
        j["verdict"] = v.splits ? "split" : "non-split";
        j["s_block_closure"] = {{"first_order_indices", closure.first_order_indices},
                                {"closed", closure.closed},
                                {"complement_leaks", closure.complement_leaks}};
        os << "verdict: " << (v.splits ? "split" : "non-split") << "\n";
        for (const auto& w : v.witnesses) {
            os << "  witness: row " << w.row << ", column " << w.column << ", value " << w.value << "\n";
        }
        os << "first-derivative block closed: " << (closure.closed ? "yes" : "no")
           << "; complement leaks into it: " << (closure.complement_leaks ? "yes" : "no") << "\n";
    }
    return {j, os.str(), "transition_" + spec_name(c) + "_" + short_hash(psi.str() + "@" + join(strings(x)))};
}

Rendered render_associated(const Command& c) {
    const JetSpec spec(c.rank, c.order, c.allow_large);
    const RationalMatrix g = parse_matrix(c.matrix);
    if (g.rows() != static_cast<std::size_t>(c.rank) || g.cols() != static_cast<std::size_t>(c.rank)) {
        throw UsageError("--matrix must be " + std::to_string(c.rank) + "x" + std::to_string(c.rank));
    }
    const InvariantSpace space = invariant_basis(spec, c.weight);
    const TransitionMatrix t = associated_action(g, space);
    Json j = to_json(t);
    j["g"] = matrix_json(g);
    std::ostringstream os;
    os << "associated action of g on E_{" << c.order << "," << c.weight << "} (rank " << c.rank << ")\n"
       << "g =\n" << matrix_table(g) << basis_table(space) << "matrix:\n" << matrix_table(t.matrix);
    return {j, os.str(), "associated_" + spec_name(c) + "_" + short_hash(c.matrix)};
}

Rendered render_v1(const Command& c) {
    const TargetMap psi = parse_map(c.map, 2);
    const auto z = point_or_origin(c, 2);
    const Rational slope = Rational::parse(c.slope);
    const V1Transition v = v1_frame_transition(psi, z, slope);
    Json j;
    j["psi"] = psi.str();
    j["point"] = strings(z);
    j["slope"] = slope.str();
    j["matrix"] = matrix_json(v.matrix);
    j["second_derivatives_involved"] = v.second_derivatives_involved;
    j["target_point"] = strings(v.target_point);
    j["target_slope"] = v.target_slope.str();
    std::ostringstream os;
    os << "V1 frame transition under " << psi.str() << " at z = (" << join(strings(z)) << "), xi = " << slope << "\n"
       << matrix_table(v.matrix) << "second derivatives involved: " << (v.second_derivatives_involved ? "yes" : "no")
       << "\ntarget chart point (" << join(strings(v.target_point)) << "), xi' = " << v.target_slope << "\n";
    return {j, os.str(), "v1_" + short_hash(psi.str() + "@" + join(strings(z)) + "@" + slope.str())};
}

Rendered render_theta(const Command& c) {
    const auto [lo, hi] = parse_range(c.degree_range);
    const Rational upper = Rational::parse(c.upper_bound);
    const auto rows = contradiction_audit(lo, hi, c.theta_weight, upper);
    std::ostringstream os;
    os << std::left << std::setw(6) << "d" << std::setw(4) << "m" << std::setw(14) << "lower bound" << std::setw(12)
       << "(decimal)" << std::setw(8) << "upper" << "contradiction\n";
    for (const auto& r : rows) {
        std::ostringstream dec;
        dec << std::fixed << std::setprecision(6) << r.lower_bound.to_double();
        os << std::setw(6) << r.degree << std::setw(4) << r.weight << std::setw(14) << r.lower_bound.str()
           << std::setw(12) << dec.str() << std::setw(8) << r.upper_bound.str() << (r.contradiction ? "yes" : "no")
           << "\n";
    }
    return {to_json(rows), os.str(),
            "theta_m" + std::to_string(c.theta_weight) + "_d" + std::to_string(lo) + "-" + std::to_string(hi)};
}

Rendered render(const Command& c) {
    switch (c.kind) {
        case CommandKind::Basis: return render_basis(c);
        case CommandKind::Dim: return render_dim(c);
        case CommandKind::Decompose: return render_decompose(c);
        case CommandKind::Verify: return render_verify(c);
        case CommandKind::Transition: return render_transition(c);
        case CommandKind::Associated: return render_associated(c);
        case CommandKind::V1: return render_v1(c);
        case CommandKind::Theta: return render_theta(c);
    }
    throw InternalError("unknown command");
}

}  // namespace

Json to_json(const InvariantSpace& space, const std::optional<std::vector<IrrepLabel>>& decomposition) {
    Json j;
    j["spec"] = {{"rank", space.spec.rank()}, {"order", space.spec.order()}};
    j["weight"] = space.weight;
    j["dimension"] = space.dimension();
    j["basis"] = strings(space.basis);
    j["torus_weights"] = space.weights;
    j["decomposition"] = decomposition ? labels_json(*decomposition) : Json(nullptr);
    return j;
}

Json to_json(const TransitionMatrix& t) {
    Json j;
    j["psi"] = t.psi.str();
    j["basepoint"] = strings(t.basepoint);
    j["basis"] = strings(t.space.basis);
    j["matrix"] = matrix_json(t.matrix);
    return j;
}

Json to_json(const SplittingVerdict& v) {
    Json partition = Json::array();
    for (const auto& b : v.partition) {
        partition.push_back({{"highest_weight", b.label.highest_weight},
                             {"multiplicity", b.label.multiplicity},
                             {"indices", b.indices}});
    }
    Json witnesses = Json::array();
    for (const auto& w : v.witnesses) witnesses.push_back({{"row", w.row}, {"column", w.column}, {"value", w.value.str()}});
    Json j;
    j["partition"] = partition;
    j["splits"] = v.splits;
    j["witnesses"] = witnesses;
    return j;
}

Json to_json(const std::vector<ThetaAuditRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        out.push_back({{"d", r.degree},
                       {"m", r.weight},
                       {"lower_bound", r.lower_bound.str()},
                       {"upper_bound", r.upper_bound.str()},
                       {"contradiction", r.contradiction}});
    }
    return out;
}

std::variant<Command, Outcome> parse_command_line(const std::vector<std::string>& args) {
    Command cmd;
    CLI::App app{"Invariant jet differentials: fibers, decompositions and transition matrices"};
    app.name(args.empty() ? "jetdiff" : std::filesystem::path(args[0]).filename().string());
    app.require_subcommand(1, 1);

    auto add_spec = [&](CLI::App* sub, bool with_weight) {
        sub->add_option("--rank", cmd.rank, "rank r of the bundle")->capture_default_str();
        sub->add_option("--order", cmd.order, "jet order k")->capture_default_str();
        if (with_weight) sub->add_option("--weight", cmd.weight, "weighted degree m")->capture_default_str()->check(CLI::NonNegativeNumber);
        sub->add_flag("--allow-large", cmd.allow_large, "permit rank or order above 4");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_flag("--json", cmd.json, "emit JSON");
        sub->add_option("--golden", cmd.golden_dir, "also write canonical JSON into this directory");
    };

    auto* basis = app.add_subcommand("basis", "canonical basis of the fiber E_{k,m}");
    add_spec(basis, true);
    add_output(basis);
    auto* dim = app.add_subcommand("dim", "fiber dimension with the modular rank cross-check");
    add_spec(dim, true);
    add_output(dim);
    auto* dec = app.add_subcommand("decompose", "GL(2) highest-weight decomposition of the fiber");
    add_spec(dec, true);
    add_output(dec);
    auto* verify = app.add_subcommand("verify", "check reparametrization invariance of a jet polynomial");
    add_spec(verify, false);
    verify->add_option("--poly", cmd.polynomial, "polynomial, e.g. \"f1'*f2'' - f2'*f1''\"")->required();
    add_output(verify);
    auto* transition = app.add_subcommand("transition", "transition matrix under a chart map");
    add_spec(transition, true);
    transition->add_option("--map", cmd.map, "chart map, e.g. \"w1 = z1; w2 = z2 + z1^2\"")->required();
    transition->add_option("--point", cmd.point, "basepoint, e.g. 0,0 (default origin)");
    add_output(transition);
    auto* associated = app.add_subcommand("associated", "structure-group action of a matrix g on the fiber");
    add_spec(associated, true);
    associated->add_option("--matrix", cmd.matrix, "g as rows, e.g. \"1,2;0,1\"")->required();
    add_output(associated);
    auto* v1 = app.add_subcommand("v1", "V1 frame transition on P(T_X), rank 2");
    v1->add_option("--map", cmd.map, "chart map")->required();
    v1->add_option("--point", cmd.point, "basepoint z (default origin)");
    v1->add_option("--slope", cmd.slope, "chart slope xi = v2/v1")->capture_default_str();
    add_output(v1);
    auto* theta = app.add_subcommand("theta", "audit the theta_{2,m} lower bound against an upper bound");
    theta->add_option("--d", cmd.degree_range, "degree or range LO:HI")->capture_default_str();
    theta->add_option("--m", cmd.theta_weight, "weight m in {3,4,5}")->capture_default_str();
    theta->add_option("--bound", cmd.upper_bound, "upper bound to compare against")->capture_default_str();
    add_output(theta);

    std::vector<const char*> argv;
    argv.push_back(args.empty() ? "jetdiff" : args[0].c_str());
    for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        return Outcome{ExitCode::Ok, app.help(), ""};
    } catch (const CLI::CallForAllHelp&) {
        return Outcome{ExitCode::Ok, app.help("", CLI::AppFormatMode::All), ""};
    } catch (const CLI::ParseError& e) {
        return Outcome{ExitCode::UsageError, "", std::string("error: ") + e.what() + "\n" + app.help()};
    }

    const std::pair<CLI::App*, CommandKind> kinds[] = {
        {basis, CommandKind::Basis},           {dim, CommandKind::Dim},     {dec, CommandKind::Decompose},
        {verify, CommandKind::Verify},         {transition, CommandKind::Transition},
        {associated, CommandKind::Associated}, {v1, CommandKind::V1},       {theta, CommandKind::Theta},
    };
    for (const auto& [sub, kind] : kinds) {
        if (sub->parsed()) cmd.kind = kind;
    }

    // Semantic validation before dispatch.
    try {
        if (cmd.kind != CommandKind::V1 && cmd.kind != CommandKind::Theta) {
            JetSpec(cmd.rank, cmd.order, cmd.allow_large);
        }
        if (cmd.kind == CommandKind::Decompose && cmd.rank != 2) {
            throw UsageError("decompose supports rank 2 only");
        }
        if (cmd.kind == CommandKind::Theta && (cmd.theta_weight < 3 || cmd.theta_weight > 5)) {
            throw UsageError("--m must be 3, 4 or 5");
        }
    } catch (const UsageError& e) {
        return Outcome{ExitCode::UsageError, "", std::string("error: ") + e.what() + "\n"};
    }
    return cmd;
}

Outcome run(const Command& command) {
    try {
        Rendered r = render(command);
        const std::string json_text = r.json.dump(2) + "\n";
        if (command.golden_dir) {
            std::filesystem::create_directories(*command.golden_dir);
            const auto path = std::filesystem::path(*command.golden_dir) / (r.golden_name + ".json");
            std::ofstream file(path, std::ios::binary);
            if (!file) throw UsageError("cannot write " + path.string());
            file << json_text;
        }
        return Outcome{ExitCode::Ok, command.json ? json_text : r.text, ""};
    } catch (const ParseError& e) {
        return Outcome{ExitCode::UsageError, "", std::string("parse error: ") + e.what() + "\n"};
    } catch (const UsageError& e) {
        return Outcome{ExitCode::UsageError, "", std::string("error: ") + e.what() + "\n"};
    } catch (const MathError& e) {
        return Outcome{ExitCode::MathError, "", std::string("math error: ") + e.what() + "\n"};
    } catch (const InternalError& e) {
        return Outcome{ExitCode::InternalError, "", std::string("internal error: ") + e.what() + "\n"};
    }
}

Outcome main_entry(const std::vector<std::string>& args) {
    auto parsed = parse_command_line(args);
    if (auto* outcome = std::get_if<Outcome>(&parsed)) return *outcome;
    return run(std::get<Command>(parsed));
}

}  // namespace jetdiff::cli
