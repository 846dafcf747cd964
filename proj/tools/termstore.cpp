// termstore: validate, convert, project and summarize termbase stores.
//
// Exit codes: 0 success, 1 validation violations (including refused or
// forced exports), 2 usage, I/O or parse errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "termstore/ddl.hpp"
#include "termstore/ntriples.hpp"
#include "termstore/store_json.hpp"
#include "termstore/tbx.hpp"
#include "termstore/terminology.hpp"

namespace {

using namespace termstore;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::io_error, "cannot read '" + path + "'");
    return std::move(buffer).str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
    out << bytes;
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
}

ERInstance load(const std::string& path, const std::string& format) {
    std::string bytes = read_file(path);
    if (format == "store") return load_store(bytes, terminology_schema());
    return import_tbx(bytes);
}

int cmd_validate(const std::string& store_path) {
    ERInstance termbase = load(store_path, "store");
    ViolationReport report = validate_termbase(termbase);
    if (report.empty()) {
        std::cout << "OK: 0 violations\n";
        return 0;
    }
    for (const Violation& violation : report.violations) {
        std::cout << violation.message << "\n";
    }
    return 1;
}

int cmd_convert(const std::string& in_path, const std::string& out_path,
                const std::string& from, const std::string& to, const std::string& base,
                const std::string& title, bool force) {
    ERInstance termbase = load(in_path, from);
    if (to == "store") {
        write_file(out_path, store_bytes(termbase));
    } else if (to == "tbx") {
        TbxExport result = export_tbx(termbase, title, force);
        write_file(out_path, result.xml);
        for (const LossEntry& entry : result.loss.entries) {
            std::cerr << "dropped " << entry.kind << " x" << entry.count << ": " << entry.reason
                      << "\n";
        }
        if (force && validate_termbase(termbase).any_conditional()) return 1;
    } else if (to == "ntriples") {
        if (base.empty()) {
            throw Error(ErrorCode::usage_error, "--base is required for ntriples output");
        }
        write_file(out_path, to_ntriples(termbase, IriScheme(base)));
    } else { // ddl
        write_file(out_path, emit_ddl(map_schema(termbase.schema())));
    }
    return 0;
}

int cmd_view(const std::string& store_path, const std::string& approach_name) {
    std::optional<Approach> approach = approach_from_name(approach_name);
    if (!approach.has_value()) {
        throw Error(ErrorCode::usage_error, "unknown approach '" + approach_name + "'");
    }
    ERInstance termbase = load(store_path, "store");
    std::cout << store_bytes(view(termbase, *approach).instance);
    return 0;
}

int cmd_stats(const std::string& store_path) {
    ERInstance termbase = load(store_path, "store");
    std::map<std::string, std::uint64_t> counts;
    for (const auto& [type_name, bucket] : termbase.entities()) {
        counts[type_name] = bucket.size();
    }
    for (const AssociationDef& assoc : termbase.schema().associations) {
        counts[assoc.name] = 0;
    }
    for (const Link& link : termbase.links()) ++counts[link.association];
    std::size_t width = 0;
    for (const auto& [name, unused] : counts) width = std::max(width, name.size());
    for (const auto& [name, count] : counts) {
        std::cout << name << std::string(width - name.size() + 2, ' ') << count << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"termbase store toolkit"};
    app.require_subcommand(1);

    std::string store_path;
    CLI::App* validate = app.add_subcommand("validate", "check a store against the model rules");
    validate->add_option("store", store_path, "TermStore file")->required();

    std::string in_path, out_path, from = "store", to;
    std::string base, title = "termbase";
    bool force = false;
    CLI::App* convert = app.add_subcommand("convert", "convert between formats");
    convert->add_option("input", in_path, "input file")->required();
    convert->add_option("output", out_path, "output file")->required();
    convert->add_option("--from", from, "input format")
        ->check(CLI::IsMember({"store", "tbx"}));
    convert->add_option("--to", to, "output format")
        ->required()
        ->check(CLI::IsMember({"store", "tbx", "ntriples", "ddl"}));
    convert->add_option("--base", base, "base IRI for ntriples output");
    convert->add_option("--title", title, "title for tbx output");
    convert->add_flag("--force", force, "export despite conditional violations");

    std::string approach;
    CLI::App* view_cmd = app.add_subcommand("view", "project a store onto one approach");
    view_cmd->add_option("store", store_path, "TermStore file")->required();
    view_cmd->add_option("--approach", approach, "approach name")->required();

    CLI::App* stats = app.add_subcommand("stats", "entity and link counts");
    stats->add_option("store", store_path, "TermStore file")->required();

    try {
        app.parse(argc, argv);
        if (validate->parsed()) return cmd_validate(store_path);
        if (convert->parsed()) return cmd_convert(in_path, out_path, from, to, base, title, force);
        if (view_cmd->parsed()) return cmd_view(store_path, approach);
        return cmd_stats(store_path);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    } catch (const termstore::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == termstore::ErrorCode::validation_failed ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
