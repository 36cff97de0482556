#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "ccalc/chern.hpp"
#include "ccalc/operations.hpp"
#include "ccalc/spaces.hpp"

namespace ccalc {

struct parse_error : usage_error {
    parse_error(const std::string& msg, size_t at)
        : usage_error("syntax error at offset " + std::to_string(at) + ": " + msg),
          offset(at) {}
    size_t offset;
};

/// Surface syntax: atoms are named generators, integers, c<i>(<bundle>),
/// td(<op>), itd(<op>) and tau; operators + - * ^ with the usual precedence.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Num, Var, Call, Add, Sub, Mul, Pow, Neg };
    Kind kind;
    long num = 0;        // Num value or Pow exponent
    std::string name;    // Var name or Call callee
    std::string arg;     // Call argument
    ExprPtr a, b;

    static ExprPtr number(long v) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Num;
        n->num = v;
        return n;
    }
    static ExprPtr var(std::string s) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Var;
        n->name = std::move(s);
        return n;
    }
    static ExprPtr call(std::string f, std::string x) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Call;
        n->name = std::move(f);
        n->arg = std::move(x);
        return n;
    }
    static ExprPtr binary(Kind k, ExprPtr l, ExprPtr r) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->a = std::move(l);
        n->b = std::move(r);
        return n;
    }
    static ExprPtr pow(ExprPtr base, long e) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Pow;
        n->a = std::move(base);
        n->num = e;
        return n;
    }
    static ExprPtr neg(ExprPtr x) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Neg;
        n->a = std::move(x);
        return n;
    }
};

inline bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return x == y;
    if (x->kind != y->kind || x->num != y->num || x->name != y->name || x->arg != y->arg)
        return false;
    return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
}

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string text) : text_(std::move(text)) {}

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected input", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr parse_sum() {
        ExprPtr acc;
        if (eat('-'))
            acc = ExprNode::neg(parse_product());
        else
            acc = parse_product();
        while (true) {
            if (eat('+'))
                acc = ExprNode::binary(ExprNode::Kind::Add, acc, parse_product());
            else if (eat('-'))
                acc = ExprNode::binary(ExprNode::Kind::Sub, acc, parse_product());
            else
                return acc;
        }
    }

    ExprPtr parse_product() {
        ExprPtr acc = parse_power();
        while (eat('*')) acc = ExprNode::binary(ExprNode::Kind::Mul, acc, parse_power());
        return acc;
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (eat('^')) {
            skip_ws();
            size_t at = pos_;
            long e = parse_integer();
            if (e < 0) throw parse_error("exponent must be nonnegative", at);
            return ExprNode::pow(base, e);
        }
        return base;
    }

    long parse_integer() {
        skip_ws();
        size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw parse_error("expected integer", at);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return v;
    }

    ExprPtr parse_atom() {
        skip_ws();
        size_t at = pos_;
        if (pos_ >= text_.size()) throw parse_error("expected expression", at);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_sum();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return e;
        }
        if (c == '-') {
            ++pos_;
            return ExprNode::neg(parse_atom());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return ExprNode::number(parse_integer());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                name += text_[pos_++];
            if (peek() == '(') {
                eat('(');
                skip_ws();
                std::string arg;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                        text_[pos_] == '_'))
                    arg += text_[pos_++];
                if (arg.empty()) throw parse_error("expected name inside call", pos_);
                if (!eat(')')) throw parse_error("expected ')'", pos_);
                return ExprNode::call(name, arg);
            }
            return ExprNode::var(name);
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "'", at);
    }

    std::string text_;
    size_t pos_ = 0;
};

inline int precedence(ExprNode::Kind k) {
    switch (k) {
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub: return 1;
        case ExprNode::Kind::Mul: return 2;
        case ExprNode::Kind::Neg: return 2;
        case ExprNode::Kind::Pow: return 3;
        default: return 4;
    }
}

} // namespace detail

inline ExprPtr parse_expr(const std::string& text) {
    return detail::ExprParser(text).parse();
}

inline std::string print_expr(const ExprPtr& e) {
    auto wrap = [](const std::string& s, bool need) { return need ? "(" + s + ")" : s; };
    int p = detail::precedence(e->kind);
    switch (e->kind) {
        case ExprNode::Kind::Num: return std::to_string(e->num);
        case ExprNode::Kind::Var: return e->name;
        case ExprNode::Kind::Call: return e->name + "(" + e->arg + ")";
        case ExprNode::Kind::Add:
            return print_expr(e->a) + " + " +
                   wrap(print_expr(e->b), detail::precedence(e->b->kind) <= p &&
                                              (e->b->kind == ExprNode::Kind::Add ||
                                               e->b->kind == ExprNode::Kind::Sub));
        case ExprNode::Kind::Sub:
            return print_expr(e->a) + " - " +
                   wrap(print_expr(e->b), detail::precedence(e->b->kind) <= p);
        case ExprNode::Kind::Mul: {
            std::string l = wrap(print_expr(e->a), detail::precedence(e->a->kind) < p);
            std::string r = wrap(print_expr(e->b), detail::precedence(e->b->kind) <= p &&
                                                       e->b->kind != ExprNode::Kind::Pow &&
                                                       detail::precedence(e->b->kind) != 4);
            return l + "*" + r;
        }
        case ExprNode::Kind::Pow:
            return wrap(print_expr(e->a), detail::precedence(e->a->kind) < 4) + "^" +
                   std::to_string(e->num);
        case ExprNode::Kind::Neg:
            return "-" + wrap(print_expr(e->a), detail::precedence(e->a->kind) <= 1);
    }
    return "";
}

// ---------------------------------------------------------------------------
// Evaluation

/// Either a plain ring element or a supported one; tau-containing expressions
/// live in the Thom module.
struct ExprValue {
    std::optional<Elem> plain;
    std::optional<SupportedElem> supported;

    bool is_supported() const { return supported.has_value(); }
    std::string str() const { return is_supported() ? supported->str() : plain->str(); }
};

struct EvalContext {
    SpacePtr space;                         // ambient evaluation space
    ThomPtr thom;                           // enables tau; names resolve on the base first
    std::map<std::string, Bundle> bundles;  // named bundles, including "N"
    std::optional<Bundle> genus_target;     // bundle td()/itd() evaluate on
    uint32_t prime = 2;

    RingPtr scalar_ring() const { return thom ? thom->base()->ring : space->ring; }

    Operation op_by_name(const std::string& name) const {
        if (name == "qmodl") return steenrod_total(OpMode::QmodL, prime);
        if (name == "qmodp") return steenrod_total(OpMode::QmodP, prime);
        if (name == "pmotivic") return steenrod_total(OpMode::Pmotivic, prime);
        if (name == "identity") return steenrod_total(OpMode::Identity, prime);
        throw usage_error("unknown operation '" + name + "'");
    }
};

namespace detail {

inline ExprValue ev_plain(Elem e) { return ExprValue{std::move(e), std::nullopt}; }
inline ExprValue ev_supported(SupportedElem s) { return ExprValue{std::nullopt, std::move(s)}; }

/// Multiply across the plain/supported split.  An ambient-ring scalar acts on
/// a supported class through restriction; two supported classes multiply by
/// the self-intersection rule tau*tau = tau * c_top(N).
inline ExprValue ev_mul(const EvalContext& ctx, const ExprValue& x, const ExprValue& y) {
    if (!x.is_supported() && !y.is_supported()) return ev_plain(*x.plain * *y.plain);
    if (x.is_supported() && y.is_supported()) {
        const auto& mod = x.supported->module();
        if (mod.get() != y.supported->module().get())
            throw usage_error("supported elements of different Thom modules");
        Elem ctop = mod->embedding().normal.top_chern();
        return ev_supported(SupportedElem(
            mod, x.supported->coeff() * y.supported->coeff() * ctop));
    }
    const SupportedElem& s = x.is_supported() ? *x.supported : *y.supported;
    const Elem& p = x.is_supported() ? *y.plain : *x.plain;
    if (p.ring().get() == s.module()->base()->ring.get()) return ev_supported(s.scale(p));
    if (p.ring().get() == s.module()->ambient()->ring.get()) return ev_supported(s.act(p));
    throw usage_error("element does not act on this Thom module");
}

inline ExprValue ev_add(const EvalContext& ctx, const ExprValue& x, const ExprValue& y,
                        bool subtract) {
    (void)ctx;
    if (x.is_supported() != y.is_supported())
        throw usage_error("cannot add a supported and an unsupported element");
    if (x.is_supported())
        return ev_supported(subtract ? *x.supported - *y.supported
                                     : *x.supported + *y.supported);
    return ev_plain(subtract ? *x.plain - *y.plain : *x.plain + *y.plain);
}

} // namespace detail

inline ExprValue eval_expr(const ExprPtr& e, const EvalContext& ctx) {
    using K = ExprNode::Kind;
    switch (e->kind) {
        case K::Num:
            return detail::ev_plain(Elem::scalar(ctx.scalar_ring(), e->num));
        case K::Var: {
            if (e->name == "tau") {
                if (!ctx.thom) throw usage_error("tau outside a Thom context");
                return detail::ev_supported(SupportedElem::tau(ctx.thom));
            }
            if (e->name == "th") {
                if (!ctx.scalar_ring()->has_theta())
                    throw usage_error("this space has no weight unit");
                return detail::ev_plain(Elem::theta_power(ctx.scalar_ring(), 1));
            }
            if (ctx.thom && ctx.thom->base()->ring->has_gen(e->name))
                return detail::ev_plain(ctx.thom->base()->gen(e->name));
            if (ctx.thom && ctx.thom->ambient()->ring->has_gen(e->name))
                return detail::ev_plain(ctx.thom->ambient()->gen(e->name));
            if (!ctx.thom && ctx.space->ring->has_gen(e->name))
                return detail::ev_plain(ctx.space->gen(e->name));
            throw usage_error("unresolved name '" + e->name + "'");
        }
        case K::Call: {
            if (e->name == "td" || e->name == "itd") {
                Operation op = ctx.op_by_name(e->arg);
                Genus g = e->name == "td" ? todd_of_operation(op)
                                          : inverse_todd_of_operation(op);
                const Bundle* target = nullptr;
                if (ctx.genus_target)
                    target = &*ctx.genus_target;
                else if (ctx.space->tangent)
                    target = &*ctx.space->tangent;
                if (!target)
                    throw usage_error("no bundle in scope for " + e->name + "(" + e->arg +
                                      ")");
                return detail::ev_plain(evaluate_genus(g, *target));
            }
            if (e->name.size() >= 2 && e->name[0] == 'c' &&
                std::isdigit(static_cast<unsigned char>(e->name[1]))) {
                int i = std::stoi(e->name.substr(1));
                auto it = ctx.bundles.find(e->arg);
                if (it == ctx.bundles.end())
                    throw usage_error("unresolved bundle '" + e->arg + "'");
                return detail::ev_plain(it->second.chern(i));
            }
            throw usage_error("unknown function '" + e->name + "'");
        }
        case K::Add:
            return detail::ev_add(ctx, eval_expr(e->a, ctx), eval_expr(e->b, ctx), false);
        case K::Sub:
            return detail::ev_add(ctx, eval_expr(e->a, ctx), eval_expr(e->b, ctx), true);
        case K::Mul:
            return detail::ev_mul(ctx, eval_expr(e->a, ctx), eval_expr(e->b, ctx));
        case K::Pow: {
            ExprValue base = eval_expr(e->a, ctx);
            if (!base.is_supported()) return detail::ev_plain(base.plain->pow(e->num));
            if (e->num == 0)
                return detail::ev_plain(Elem::one(ctx.scalar_ring()));
            ExprValue acc = base;
            for (long k = 1; k < e->num; ++k) acc = detail::ev_mul(ctx, acc, base);
            return acc;
        }
        case K::Neg: {
            ExprValue v = eval_expr(e->a, ctx);
            if (v.is_supported())
                return detail::ev_supported(SupportedElem(
                    v.supported->module(), -v.supported->coeff()));
            return detail::ev_plain(-*v.plain);
        }
    }
    throw usage_error("malformed expression tree");
}

} // namespace ccalc
