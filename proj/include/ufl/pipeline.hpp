// A tiny expression language for composing state preparation, acceleration,
// filtering and measurement:
//
//   pipeline := stage ('|' stage)*
//   stage    := IDENT ('(' (arg (',' arg)*)? ')')?
//   arg      := IDENT '=' (NUMBER | IDENT)
//
// Stage vocabulary: state(mu=..), accel(part=.., r=..),
// filter(part=.., kappa=../Q=.., mode=.., pair=..), negativity, dump.
// NUMBER also accepts the literals pi, pi/2 and pi/4. The first stage must
// be `state`, each subsystem may be accelerated at most once, and
// `negativity`/`dump` terminate the pipeline.

#ifndef UFL_PIPELINE_HPP
#define UFL_PIPELINE_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ufl/states.hpp"

namespace ufl {

// Half-open byte range [begin, end) into the source text.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct StageArg {
    std::string name;
    SourceSpan name_span;
    bool is_number = false;
    double number = 0.0;    // meaningful when is_number
    std::string identifier; // meaningful when !is_number
    SourceSpan value_span;
};

struct PipelineStage {
    std::string name;
    SourceSpan name_span;
    std::vector<StageArg> args;
    SourceSpan span;
};

struct PipelineExpr {
    std::vector<PipelineStage> stages;
};

// Parse and semantically check. Throws ParseError carrying the byte offset,
// the offending lexeme and the acceptable-token set.
PipelineExpr parse_pipeline(std::string_view text);

// Canonical one-line rendering; numbers use shortest round-trip form, so
// parsing the output reproduces the same AST (ignoring spans).
std::string print_pipeline(const PipelineExpr& expr);

// Structural equality ignoring source spans.
bool ast_equal(const PipelineExpr& a, const PipelineExpr& b);

using EvalOutcome = std::variant<double, DensityMatrix>;

// Fold the stages left to right over a density matrix. `negativity` yields
// a scalar, `dump` the current state. Failures surface as EvalError
// annotated with the failing stage's span.
EvalOutcome eval_pipeline(const PipelineExpr& expr);

// dims=<d1>x<d2> line followed by re:/im: blocks, row-major, 15 significant
// digits per entry.
std::string format_state_dump(const DensityMatrix& rho);

} // namespace ufl

#endif // UFL_PIPELINE_HPP
