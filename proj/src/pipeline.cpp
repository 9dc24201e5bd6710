#include "ufl/pipeline.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "ufl/errors.hpp"
#include "ufl/filters.hpp"
#include "ufl/format.hpp"
#include "ufl/measures.hpp"
#include "ufl/rindler.hpp"

namespace ufl {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

enum class TokKind { Ident, Number, Pipe, LParen, RParen, Comma, Equals, Slash, End };

struct Token {
    TokKind kind;
    std::size_t begin;
    std::size_t end;
    std::string text;
    double number = 0.0;
};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

bool starts_number(std::string_view s, std::size_t p) {
    if (is_digit(s[p])) return true;
    if (s[p] == '.' && p + 1 < s.size() && is_digit(s[p + 1])) return true;
    if (s[p] == '-' && p + 1 < s.size()) {
        if (is_digit(s[p + 1])) return true;
        if (s[p + 1] == '.' && p + 2 < s.size() && is_digit(s[p + 2])) return true;
    }
    return false;
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t p = 0;
    while (p < src.size()) {
        const char c = src[p];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++p;
            continue;
        }
        const std::size_t begin = p;
        if (is_ident_start(c)) {
            while (p < src.size() && is_ident_char(src[p])) ++p;
            out.push_back({TokKind::Ident, begin, p, std::string(src.substr(begin, p - begin))});
            continue;
        }
        if (starts_number(src, p)) {
            if (src[p] == '-') ++p;
            while (p < src.size() && is_digit(src[p])) ++p;
            if (p < src.size() && src[p] == '.') {
                ++p;
                while (p < src.size() && is_digit(src[p])) ++p;
            }
            if (p < src.size() && (src[p] == 'e' || src[p] == 'E')) {
                std::size_t q = p + 1;
                if (q < src.size() && (src[q] == '+' || src[q] == '-')) ++q;
                if (q < src.size() && is_digit(src[q])) {
                    p = q;
                    while (p < src.size() && is_digit(src[p])) ++p;
                }
            }
            Token tok{TokKind::Number, begin, p, std::string(src.substr(begin, p - begin))};
            const auto res =
                std::from_chars(src.data() + begin, src.data() + p, tok.number);
            if (res.ec != std::errc{} || res.ptr != src.data() + p) {
                throw ParseError(begin, tok.text, {"number"}, "malformed number");
            }
            out.push_back(std::move(tok));
            continue;
        }
        TokKind kind;
        switch (c) {
            case '|': kind = TokKind::Pipe; break;
            case '(': kind = TokKind::LParen; break;
            case ')': kind = TokKind::RParen; break;
            case ',': kind = TokKind::Comma; break;
            case '=': kind = TokKind::Equals; break;
            case '/': kind = TokKind::Slash; break;
            default:
                throw ParseError(begin, std::string(1, c), {"identifier", "number", "punctuation"},
                                 "unexpected character");
        }
        out.push_back({kind, begin, begin + 1, std::string(1, c)});
        ++p;
    }
    out.push_back({TokKind::End, src.size(), src.size(), ""});
    return out;
}

struct Parser {
    std::vector<Token> toks;
    std::size_t pos = 0;

    const Token& peek() const { return toks[pos]; }
    const Token& advance() { return toks[pos++]; }

    [[noreturn]] static void fail(const Token& tok, std::vector<std::string> expected,
                                  const std::string& message) {
        const std::string lexeme = tok.kind == TokKind::End ? "end of input" : tok.text;
        throw ParseError(tok.begin, lexeme, std::move(expected), message);
    }

    StageArg parse_arg() {
        if (peek().kind != TokKind::Ident) {
            fail(peek(), {"identifier"}, "expected an argument name");
        }
        const Token name = advance();
        StageArg arg;
        arg.name = name.text;
        arg.name_span = {name.begin, name.end};
        if (peek().kind != TokKind::Equals) {
            fail(peek(), {"="}, "expected '=' after argument name");
        }
        advance();
        if (peek().kind == TokKind::Number) {
            const Token value = advance();
            arg.is_number = true;
            arg.number = value.number;
            arg.value_span = {value.begin, value.end};
            return arg;
        }
        if (peek().kind == TokKind::Ident) {
            const Token value = advance();
            arg.value_span = {value.begin, value.end};
            if (value.text == "pi") {
                arg.is_number = true;
                arg.number = std::numbers::pi;
                if (peek().kind == TokKind::Slash) {
                    advance();
                    if (peek().kind != TokKind::Number ||
                        (peek().text != "2" && peek().text != "4")) {
                        fail(peek(), {"2", "4"}, "pi literals are pi, pi/2 and pi/4");
                    }
                    const Token denom = advance();
                    arg.number = denom.text == "2" ? std::numbers::pi / 2.0 : kQuarterPi;
                    arg.value_span.end = denom.end;
                }
            } else {
                arg.identifier = value.text;
            }
            return arg;
        }
        fail(peek(), {"number", "identifier"}, "expected an argument value");
    }

    PipelineStage parse_stage() {
        if (peek().kind != TokKind::Ident) {
            fail(peek(), {"identifier"}, "expected a stage name");
        }
        const Token name = advance();
        PipelineStage stage;
        stage.name = name.text;
        stage.name_span = {name.begin, name.end};
        stage.span = stage.name_span;
        if (peek().kind == TokKind::LParen) {
            advance();
            if (peek().kind != TokKind::RParen) {
                stage.args.push_back(parse_arg());
                while (peek().kind == TokKind::Comma) {
                    advance();
                    stage.args.push_back(parse_arg());
                }
            }
            if (peek().kind != TokKind::RParen) {
                fail(peek(), {",", ")"}, "expected ',' or ')' in the argument list");
            }
            stage.span.end = advance().end;
        }
        return stage;
    }

    PipelineExpr parse() {
        if (peek().kind == TokKind::End) {
            fail(peek(), {"identifier"}, "empty pipeline");
        }
        PipelineExpr expr;
        expr.stages.push_back(parse_stage());
        while (peek().kind == TokKind::Pipe) {
            advance();
            expr.stages.push_back(parse_stage());
        }
        if (peek().kind != TokKind::End) {
            fail(peek(), {"|", "end of input"}, "trailing input after pipeline");
        }
        return expr;
    }
};

[[noreturn]] void semantic_fail(const SourceSpan& span, const std::string& lexeme,
                                std::vector<std::string> expected, const std::string& message) {
    throw ParseError(span.begin, lexeme, std::move(expected), message);
}

const StageArg* find_arg(const PipelineStage& stage, std::string_view name) {
    for (const StageArg& arg : stage.args) {
        if (arg.name == name) return &arg;
    }
    return nullptr;
}

double require_number(const PipelineStage& stage, const char* name) {
    const StageArg* arg = find_arg(stage, name);
    if (!arg) {
        semantic_fail(stage.name_span, stage.name, {name},
                      "stage '" + stage.name + "' requires argument '" + name + "'");
    }
    if (!arg->is_number) {
        semantic_fail(arg->value_span, arg->identifier, {"number"},
                      "argument '" + std::string(name) + "' expects a number");
    }
    return arg->number;
}

std::string require_identifier(const PipelineStage& stage, const char* name,
                               const std::vector<std::string>& allowed) {
    const StageArg* arg = find_arg(stage, name);
    if (!arg) {
        semantic_fail(stage.name_span, stage.name, {name},
                      "stage '" + stage.name + "' requires argument '" + name + "'");
    }
    if (arg->is_number) {
        semantic_fail(arg->value_span, format_shortest(arg->number), allowed,
                      "argument '" + std::string(name) + "' expects an identifier");
    }
    for (const std::string& a : allowed) {
        if (arg->identifier == a) return a;
    }
    std::string joined;
    for (const std::string& a : allowed) {
        if (!joined.empty()) joined += " or ";
        joined += a;
    }
    semantic_fail(arg->value_span, arg->identifier, allowed,
                  "argument '" + std::string(name) + "' must be " + joined);
}

void check_known_args(const PipelineStage& stage, const std::vector<std::string>& known) {
    for (std::size_t i = 0; i < stage.args.size(); ++i) {
        const StageArg& arg = stage.args[i];
        bool ok = false;
        for (const std::string& k : known) ok = ok || arg.name == k;
        if (!ok) {
            semantic_fail(arg.name_span, arg.name, known,
                          "unknown argument '" + arg.name + "' for stage '" + stage.name + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (stage.args[j].name == arg.name) {
                semantic_fail(arg.name_span, arg.name, {},
                              "duplicate argument '" + arg.name + "'");
            }
        }
    }
}

void check_range(const PipelineStage& stage, const char* name, double value, double lo, double hi,
                 bool open, const char* range_text) {
    const bool bad = open ? (value <= lo || value >= hi) : (value < lo || value > hi);
    if (!bad && std::isfinite(value)) return;
    const StageArg* arg = find_arg(stage, name);
    semantic_fail(arg->value_span, format_shortest(value), {},
                  std::string(name) + " out of range " + range_text);
}

void semantic_check(const PipelineExpr& expr) {
    bool accel_qubit = false;
    bool accel_qutrit = false;
    for (std::size_t i = 0; i < expr.stages.size(); ++i) {
        const PipelineStage& stage = expr.stages[i];
        const bool last = i + 1 == expr.stages.size();
        if (stage.name == "state") {
            if (i != 0) {
                semantic_fail(stage.name_span, stage.name, {},
                              "ordering violation: 'state' must be the first stage");
            }
            check_known_args(stage, {"mu"});
            check_range(stage, "mu", require_number(stage, "mu"), 0.0, 0.5, false, "[0, 0.5]");
        } else if (i == 0) {
            semantic_fail(stage.name_span, stage.name, {"state"},
                          "ordering violation: pipeline must begin with 'state'");
        } else if (stage.name == "accel") {
            check_known_args(stage, {"part", "r"});
            const std::string part = require_identifier(stage, "part", {"qubit", "qutrit"});
            check_range(stage, "r", require_number(stage, "r"), 0.0, kQuarterPi, false,
                        "[0, pi/4]");
            bool& seen = part == "qubit" ? accel_qubit : accel_qutrit;
            if (seen) {
                semantic_fail(stage.name_span, stage.name, {},
                              "ordering violation: the " + part + " is already accelerated");
            }
            seen = true;
        } else if (stage.name == "filter") {
            check_known_args(stage, {"part", "kappa", "Q", "mode", "pair"});
            const std::string part = require_identifier(stage, "part", {"qubit", "qutrit"});
            if (part == "qubit") {
                check_range(stage, "kappa", require_number(stage, "kappa"), 0.0, 1.0, true,
                            "(0, 1)");
                for (const char* banned : {"Q", "pair"}) {
                    if (const StageArg* arg = find_arg(stage, banned)) {
                        semantic_fail(arg->name_span, arg->name, {"kappa"},
                                      "argument '" + arg->name +
                                          "' is only valid for qutrit filters");
                    }
                }
                if (find_arg(stage, "mode")) {
                    require_identifier(stage, "mode", {"postselect"});
                }
            } else {
                check_range(stage, "Q", require_number(stage, "Q"), 0.0, 1.0, true, "(0, 1)");
                if (const StageArg* arg = find_arg(stage, "kappa")) {
                    semantic_fail(arg->name_span, arg->name, {"Q"},
                                  "argument 'kappa' is only valid for qubit filters");
                }
                require_identifier(stage, "mode", {"postselect", "channel"});
                if (find_arg(stage, "pair")) {
                    require_identifier(stage, "pair", {"discard", "keep"});
                }
            }
        } else if (stage.name == "negativity" || stage.name == "dump") {
            if (!stage.args.empty()) {
                semantic_fail(stage.args.front().name_span, stage.args.front().name, {},
                              "stage '" + stage.name + "' takes no arguments");
            }
            if (!last) {
                semantic_fail(stage.name_span, stage.name, {},
                              "ordering violation: '" + stage.name +
                                  "' must be the terminal stage");
            }
        } else {
            semantic_fail(stage.name_span, stage.name,
                          {"state", "accel", "filter", "negativity", "dump"},
                          "unknown stage '" + stage.name + "'");
        }
    }
}

} // namespace

PipelineExpr parse_pipeline(std::string_view text) {
    Parser parser{lex(text)};
    PipelineExpr expr = parser.parse();
    semantic_check(expr);
    return expr;
}

std::string print_pipeline(const PipelineExpr& expr) {
    std::string out;
    for (std::size_t i = 0; i < expr.stages.size(); ++i) {
        if (i) out += " | ";
        const PipelineStage& stage = expr.stages[i];
        out += stage.name;
        if (!stage.args.empty()) {
            out += "(";
            for (std::size_t j = 0; j < stage.args.size(); ++j) {
                if (j) out += ", ";
                const StageArg& arg = stage.args[j];
                out += arg.name + "=";
                out += arg.is_number ? format_shortest(arg.number) : arg.identifier;
            }
            out += ")";
        }
    }
    return out;
}

bool ast_equal(const PipelineExpr& a, const PipelineExpr& b) {
    if (a.stages.size() != b.stages.size()) return false;
    for (std::size_t i = 0; i < a.stages.size(); ++i) {
        const PipelineStage& sa = a.stages[i];
        const PipelineStage& sb = b.stages[i];
        if (sa.name != sb.name || sa.args.size() != sb.args.size()) return false;
        for (std::size_t j = 0; j < sa.args.size(); ++j) {
            const StageArg& xa = sa.args[j];
            const StageArg& xb = sb.args[j];
            if (xa.name != xb.name || xa.is_number != xb.is_number) return false;
            if (xa.is_number ? xa.number != xb.number : xa.identifier != xb.identifier) {
                return false;
            }
        }
    }
    return true;
}

EvalOutcome eval_pipeline(const PipelineExpr& expr) {
    if (expr.stages.empty()) throw EvalError(0, 0, "", "empty pipeline");
    std::optional<DensityMatrix> state;
    for (const PipelineStage& stage : expr.stages) {
        try {
            if (stage.name != "state" && !state) {
                throw Error("no state prepared before stage '" + stage.name + "'");
            }
            if (stage.name == "state") {
                state = one_param_state(FamilyParameter(require_number(stage, "mu")));
            } else if (stage.name == "accel") {
                const std::string part = require_identifier(stage, "part", {"qubit", "qutrit"});
                const Subsystem which =
                    part == "qubit" ? Subsystem::Qubit : Subsystem::Qutrit;
                state = accelerate(*state, which, RindlerParameter(require_number(stage, "r")));
            } else if (stage.name == "filter") {
                const std::string part = require_identifier(stage, "part", {"qubit", "qutrit"});
                FilterSpec spec;
                if (part == "qubit") {
                    spec.target = Subsystem::Qubit;
                    spec.strength = require_number(stage, "kappa");
                } else {
                    spec.target = Subsystem::Qutrit;
                    spec.strength = require_number(stage, "Q");
                    spec.mode = require_identifier(stage, "mode", {"postselect", "channel"}) ==
                                        "channel"
                                    ? FilterMode::Channel
                                    : FilterMode::Postselect;
                    if (find_arg(stage, "pair")) {
                        spec.pair_policy =
                            require_identifier(stage, "pair", {"discard", "keep"}) == "keep"
                                ? PairPolicy::Keep
                                : PairPolicy::Discard;
                    }
                }
                state = apply_filter(*state, spec);
            } else if (stage.name == "negativity") {
                return negativity(*state);
            } else if (stage.name == "dump") {
                return *state;
            } else {
                throw Error("unknown stage '" + stage.name + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw EvalError(stage.span.begin, stage.span.end, stage.name, e.what());
        }
    }
    const PipelineStage& last = expr.stages.back();
    throw EvalError(last.span.begin, last.span.end, last.name,
                    "pipeline must end with 'negativity' or 'dump'");
}

std::string format_state_dump(const DensityMatrix& rho) {
    std::string out = "dims=" + std::to_string(rho.dims[0]) + "x" + std::to_string(rho.dims[1]) +
                      "\nre:\n";
    const std::size_t n = rho.matrix.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out += " ";
            out += format_sig15(rho.matrix(i, j).real());
        }
        out += "\n";
    }
    out += "im:\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out += " ";
            out += format_sig15(rho.matrix(i, j).imag());
        }
        out += "\n";
    }
    return out;
}

} // namespace ufl
