// Copyright 2026 The dyncirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dyncirc/circuit/qasm.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace dyncirc {

ParseError::ParseError(size_t line, size_t column, const std::string &msg)
    : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line(line),
      column(column) {
}

namespace {

std::string format_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

const char *qasm_gate(GateKind k) {
    switch (k) {
        case GateKind::H:
            return "h";
        case GateKind::X:
            return "x";
        case GateKind::Z:
            return "z";
        case GateKind::S:
            return "s";
        case GateKind::Sdg:
            return "sdg";
        case GateKind::CX:
            return "cx";
        case GateKind::RZ:
            return "rz";
        case GateKind::Reset:
            return "reset";
        case GateKind::Barrier:
            return "barrier";
        case GateKind::Measure:
            return "measure";
    }
    return "?";
}

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
    Tok type;
    std::string text;
    size_t line;
    size_t col;
};

struct Pragma {
    std::string text;
    size_t line;
    size_t col;
};

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {
    }

    std::vector<Token> run(std::vector<Pragma> &pragmas) {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", line_, col_});
                return out;
            }
            size_t l = line_, c = col_;
            char ch = src_[pos_];
            if (std::isalpha((unsigned char)ch) || ch == '_') {
                std::string id;
                while (pos_ < src_.size() && (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_')) {
                    id.push_back(advance());
                }
                if (id == "pragma" && at_statement_start(out)) {
                    std::string rest;
                    while (pos_ < src_.size() && src_[pos_] != '\n') {
                        rest.push_back(advance());
                    }
                    pragmas.push_back({rest, l, c});
                    // Pragmas are line-oriented and leave a marker for ordering.
                    out.push_back({Tok::Symbol, "#pragma" + std::to_string(pragmas.size() - 1), l, c});
                    continue;
                }
                out.push_back({Tok::Ident, id, l, c});
            } else if (std::isdigit((unsigned char)ch) || (ch == '.' && pos_ + 1 < src_.size() &&
                                                            std::isdigit((unsigned char)src_[pos_ + 1]))) {
                std::string num;
                while (pos_ < src_.size() &&
                       (std::isdigit((unsigned char)src_[pos_]) || src_[pos_] == '.' || src_[pos_] == 'e' ||
                        src_[pos_] == 'E' ||
                        ((src_[pos_] == '-' || src_[pos_] == '+') && !num.empty() &&
                         (num.back() == 'e' || num.back() == 'E')))) {
                    num.push_back(advance());
                }
                out.push_back({Tok::Number, num, l, c});
            } else if (ch == '"') {
                advance();
                std::string s;
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                    s.push_back(advance());
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw ParseError(l, c, "unterminated string");
                }
                advance();
                out.push_back({Tok::String, s, l, c});
            } else if (ch == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
                advance();
                advance();
                out.push_back({Tok::Symbol, "==", l, c});
            } else if (std::string_view(";[](),^=+-*/").find(ch) != std::string_view::npos) {
                out.push_back({Tok::Symbol, std::string(1, advance()), l, c});
            } else {
                throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
            }
        }
    }

   private:
    static bool at_statement_start(const std::vector<Token> &out) {
        return out.empty() || out.back().text == ";" || out.back().text.starts_with("#pragma");
    }

    char advance() {
        char ch = src_[pos_++];
        if (ch == '\n') {
            line_++;
            col_ = 1;
        } else {
            col_++;
        }
        return ch;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char ch = src_[pos_];
            if (std::isspace((unsigned char)ch)) {
                advance();
            } else if (ch == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else if (ch == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                size_t l = line_, c = col_;
                advance();
                advance();
                while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
                    advance();
                }
                if (pos_ + 1 >= src_.size()) {
                    throw ParseError(l, c, "unterminated block comment");
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    size_t line_ = 1;
    size_t col_ = 1;
};

class Parser {
   public:
    Parser(std::vector<Token> toks, std::vector<Pragma> pragmas) : toks_(std::move(toks)), pragmas_(std::move(pragmas)) {
    }

    Circuit run() {
        while (peek().type != Tok::End) {
            statement();
        }
        if (!circuit_.has_value()) {
            if (qreg_name_.empty()) {
                return Circuit(0, 0, Connectivity::complete(0));
            }
            circuit(peek());
        }
        if (pending_measure_x_.has_value()) {
            throw ParseError(pending_measure_x_->line, pending_measure_x_->col, "dangling measure_x pragma");
        }
        return std::move(*circuit_);
    }

   private:
    const Token &peek(size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }

    Token take() {
        Token t = peek();
        if (t.type != Tok::End) {
            pos_++;
        }
        return t;
    }

    [[noreturn]] void fail(const Token &t, const std::string &msg) const {
        std::string got = t.type == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, msg + " (got " + got + ")");
    }

    Token expect_symbol(const std::string &s) {
        Token t = take();
        if (t.type != Tok::Symbol || t.text != s) {
            fail(t, "expected '" + s + "'");
        }
        return t;
    }

    Token expect_ident(const std::string &s = "") {
        Token t = take();
        if (t.type != Tok::Ident || (!s.empty() && t.text != s)) {
            fail(t, s.empty() ? "expected identifier" : "expected '" + s + "'");
        }
        return t;
    }

    size_t expect_index() {
        Token t = take();
        if (t.type != Tok::Number) {
            fail(t, "expected integer index");
        }
        size_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size()) {
            fail(t, "expected integer index");
        }
        return v;
    }

    bool is_symbol(const Token &t, const char *s) const {
        return t.type == Tok::Symbol && t.text == s;
    }

    void statement() {
        const Token &t = peek();
        if (t.type == Tok::Symbol && t.text.starts_with("#pragma")) {
            take();
            pragma(pragmas_[std::stoul(t.text.substr(7))]);
            return;
        }
        if (t.type != Tok::Ident) {
            fail(t, "expected statement");
        }
        if (t.text == "OPENQASM") {
            take();
            Token v = take();
            if (v.type != Tok::Number || (v.text != "3" && v.text != "3.0")) {
                fail(v, "only OPENQASM 3 is supported");
            }
            expect_symbol(";");
        } else if (t.text == "include") {
            take();
            Token s = take();
            if (s.type != Tok::String || s.text != "stdgates.inc") {
                fail(s, "only \"stdgates.inc\" may be included");
            }
            expect_symbol(";");
        } else if (t.text == "qubit" || t.text == "bit") {
            declaration();
        } else if (t.text == "if") {
            conditional();
        } else if (t.text == "reset") {
            take();
            auto [q, qt] = qubit_operand();
            emit(Instruction::reset(q), qt);
            expect_symbol(";");
        } else if (peek(1).type == Tok::Symbol && peek(1).text == "[" && t.text == creg_name_) {
            measurement();
        } else {
            auto inst = gate_call();
            expect_symbol(";");
            emit(inst.first, inst.second);
        }
    }

    void pragma(const Pragma &p) {
        std::stringstream ss(p.text);
        std::string ns, key;
        ss >> ns >> key;
        if (ns != "dyncirc") {
            throw ParseError(p.line, p.col, "unsupported pragma '" + ns + "'");
        }
        if (key == "roles") {
            std::string roles;
            ss >> roles;
            std::vector<Role> r;
            for (char ch : roles) {
                if (ch == 'S') {
                    r.push_back(Role::System);
                } else if (ch == 'A') {
                    r.push_back(Role::Ancilla);
                } else {
                    throw ParseError(p.line, p.col, "roles must be a string of S and A");
                }
            }
            roles_ = std::move(r);
        } else if (key == "connectivity") {
            std::string kind;
            ss >> kind;
            if (kind == "line") {
                connectivity_ = Connectivity::line();
            } else if (kind == "graph") {
                std::set<std::pair<size_t, size_t>> edges;
                std::string e;
                while (ss >> e) {
                    size_t dash = e.find('-');
                    if (dash == std::string::npos) {
                        throw ParseError(p.line, p.col, "graph edges are written a-b");
                    }
                    try {
                        edges.insert({std::stoul(e.substr(0, dash)), std::stoul(e.substr(dash + 1))});
                    } catch (const std::exception &) {
                        throw ParseError(p.line, p.col, "bad edge '" + e + "'");
                    }
                }
                connectivity_ = Connectivity::graph(std::move(edges));
            } else {
                throw ParseError(p.line, p.col, "unknown connectivity '" + kind + "'");
            }
        } else if (key == "measure_x") {
            pending_measure_x_ = Token{Tok::Symbol, "", p.line, p.col};
        } else {
            throw ParseError(p.line, p.col, "unknown dyncirc pragma '" + key + "'");
        }
        if (circuit_.has_value() && key != "measure_x") {
            throw ParseError(p.line, p.col, "pragma must precede register declarations");
        }
    }

    void declaration() {
        Token kw = take();
        expect_symbol("[");
        size_t size = expect_index();
        expect_symbol("]");
        Token name = expect_ident();
        expect_symbol(";");
        if (kw.text == "qubit") {
            if (!qreg_name_.empty()) {
                fail(kw, "only one qubit register is supported");
            }
            qreg_name_ = name.text;
            num_qubits_ = size;
        } else {
            if (!creg_name_.empty()) {
                fail(kw, "only one bit register is supported");
            }
            if (qreg_name_.empty()) {
                fail(kw, "declare the qubit register first");
            }
            creg_name_ = name.text;
            num_clbits_ = size;
        }
        if (circuit_.has_value()) {
            fail(kw, "registers must be declared before any instruction");
        }
    }

    Circuit &circuit(const Token &at) {
        if (!circuit_.has_value()) {
            if (qreg_name_.empty()) {
                fail(at, "qubit register not declared");
            }
            std::vector<Role> roles = roles_.value_or(std::vector<Role>(num_qubits_, Role::System));
            if (roles.size() != num_qubits_) {
                fail(at, "roles pragma size does not match qubit register");
            }
            circuit_.emplace(
                std::move(roles), num_clbits_, connectivity_.value_or(Connectivity::complete(num_qubits_)));
        }
        return *circuit_;
    }

    std::pair<size_t, Token> qubit_operand() {
        Token name = expect_ident();
        if (name.text != qreg_name_) {
            fail(name, "unknown qubit register");
        }
        expect_symbol("[");
        size_t q = expect_index();
        expect_symbol("]");
        return {q, name};
    }

    size_t clbit_operand() {
        Token name = expect_ident();
        if (name.text != creg_name_) {
            fail(name, "unknown bit register");
        }
        expect_symbol("[");
        size_t b = expect_index();
        expect_symbol("]");
        return b;
    }

    double expr() {
        double v = term();
        while (is_symbol(peek(), "+") || is_symbol(peek(), "-")) {
            bool plus = take().text == "+";
            double r = term();
            v = plus ? v + r : v - r;
        }
        return v;
    }

    double term() {
        double v = factor();
        while (is_symbol(peek(), "*") || is_symbol(peek(), "/")) {
            bool mul = take().text == "*";
            double r = factor();
            v = mul ? v * r : v / r;
        }
        return v;
    }

    double factor() {
        Token t = take();
        if (is_symbol(t, "-")) {
            return -factor();
        }
        if (is_symbol(t, "+")) {
            return factor();
        }
        if (is_symbol(t, "(")) {
            double v = expr();
            expect_symbol(")");
            return v;
        }
        if (t.type == Tok::Ident && (t.text == "pi" || t.text == "π")) {
            return std::numbers::pi;
        }
        if (t.type == Tok::Number) {
            double v = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || p != t.text.data() + t.text.size()) {
                fail(t, "malformed number");
            }
            return v;
        }
        fail(t, "expected angle expression");
    }

    std::pair<Instruction, Token> gate_call() {
        Token name = expect_ident();
        static const std::pair<const char *, GateKind> single[] = {
            {"h", GateKind::H}, {"x", GateKind::X}, {"z", GateKind::Z}, {"s", GateKind::S}, {"sdg", GateKind::Sdg}};
        for (auto [n, k] : single) {
            if (name.text == n) {
                auto [q, _] = qubit_operand();
                return {Instruction::gate(k, q), name};
            }
        }
        if (name.text == "rz") {
            expect_symbol("(");
            double a = expr();
            expect_symbol(")");
            auto [q, _] = qubit_operand();
            return {Instruction::rz(q, a), name};
        }
        if (name.text == "cx") {
            auto [c, _a] = qubit_operand();
            expect_symbol(",");
            auto [t, _b] = qubit_operand();
            return {Instruction::cx(c, t), name};
        }
        if (name.text == "barrier") {
            std::vector<size_t> qs{qubit_operand().first};
            while (is_symbol(peek(), ",")) {
                take();
                qs.push_back(qubit_operand().first);
            }
            return {Instruction::barrier(qs), name};
        }
        fail(name, "unsupported statement");
    }

    void measurement() {
        Token start = peek();
        size_t b = clbit_operand();
        expect_symbol("=");
        expect_ident("measure");
        auto [q, qt] = qubit_operand();
        expect_symbol(";");
        emit(Instruction::measure(q, b), start);
    }

    void conditional() {
        Token kw = take();
        expect_symbol("(");
        std::vector<size_t> bits{clbit_operand()};
        while (is_symbol(peek(), "^")) {
            take();
            bits.push_back(clbit_operand());
        }
        expect_symbol("==");
        size_t v = expect_index();
        if (v > 1) {
            fail(kw, "parity can only be compared with 0 or 1");
        }
        expect_symbol(")");
        auto [inst, at] = gate_call();
        expect_symbol(";");
        if (inst.kind == GateKind::CX || inst.kind == GateKind::Barrier) {
            fail(at, "only single-qubit gates may be conditioned");
        }
        try {
            inst.condition = ClassicalCondition(bits, v == 0);
        } catch (const CircuitError &e) {
            fail(kw, e.what());
        }
        emit(inst, kw);
    }

    void emit(const Instruction &inst, const Token &at) {
        Circuit &c = circuit(at);
        try {
            if (pending_measure_x_.has_value()) {
                // pragma, then h, measure, h on one qubit.
                const char *shape = "measure_x pragma must be followed by h, measure and h on the same qubit";
                if (pending_measure_.has_value()) {
                    if (inst.kind != GateKind::H || inst.qubits != pending_measure_->qubits || inst.condition) {
                        fail(at, shape);
                    }
                    Instruction m = *pending_measure_;
                    m.basis = Basis::X;
                    pending_h_.reset();
                    pending_measure_.reset();
                    pending_measure_x_.reset();
                    c.append(m);
                    return;
                }
                if (pending_h_.has_value()) {
                    if (inst.kind != GateKind::Measure || inst.qubits != pending_h_->qubits || inst.condition) {
                        fail(at, shape);
                    }
                    pending_measure_ = inst;
                    return;
                }
                if (inst.kind != GateKind::H || inst.condition) {
                    fail(at, shape);
                }
                pending_h_ = inst;
                return;
            }
            c.append(inst);
        } catch (const CircuitError &e) {
            throw ParseError(at.line, at.col, e.what());
        }
    }

    std::vector<Token> toks_;
    std::vector<Pragma> pragmas_;
    size_t pos_ = 0;
    std::string qreg_name_;
    std::string creg_name_;
    size_t num_qubits_ = 0;
    size_t num_clbits_ = 0;
    std::optional<std::vector<Role>> roles_;
    std::optional<Connectivity> connectivity_;
    std::optional<Circuit> circuit_;
    std::optional<Token> pending_measure_x_;
    std::optional<Instruction> pending_h_;
    std::optional<Instruction> pending_measure_;
};

}  // namespace

std::string to_qasm(const Circuit &circuit) {
    std::stringstream out;
    out << "OPENQASM 3.0;\n";
    out << "include \"stdgates.inc\";\n";
    out << "pragma dyncirc roles ";
    for (auto r : circuit.roles()) {
        out << (r == Role::System ? 'S' : 'A');
    }
    out << "\n";
    if (circuit.connectivity().kind == Connectivity::Kind::Line) {
        out << "pragma dyncirc connectivity line\n";
    } else {
        out << "pragma dyncirc connectivity graph";
        for (auto [a, b] : circuit.connectivity().edges) {
            out << " " << a << "-" << b;
        }
        out << "\n";
    }
    out << "qubit[" << circuit.num_qubits() << "] q;\n";
    out << "bit[" << circuit.num_clbits() << "] c;\n";
    for (const auto &inst : circuit.instructions()) {
        if (inst.condition.has_value()) {
            out << "if (";
            for (size_t k = 0; k < inst.condition->bits.size(); k++) {
                out << (k ? " ^ " : "") << "c[" << inst.condition->bits[k] << "]";
            }
            out << " == " << (inst.condition->negate ? 0 : 1) << ") ";
        }
        switch (inst.kind) {
            case GateKind::Measure:
                if (inst.basis == Basis::X) {
                    out << "pragma dyncirc measure_x\n";
                    out << "h q[" << inst.qubits[0] << "];\n";
                }
                out << "c[" << inst.clbit << "] = measure q[" << inst.qubits[0] << "];\n";
                if (inst.basis == Basis::X) {
                    out << "h q[" << inst.qubits[0] << "];\n";
                }
                break;
            case GateKind::CX:
                out << "cx q[" << inst.qubits[0] << "], q[" << inst.qubits[1] << "];\n";
                break;
            case GateKind::RZ:
                out << "rz(" << format_angle(inst.angle) << ") q[" << inst.qubits[0] << "];\n";
                break;
            case GateKind::Barrier:
                out << "barrier";
                for (size_t k = 0; k < inst.qubits.size(); k++) {
                    out << (k ? ", " : " ") << "q[" << inst.qubits[k] << "]";
                }
                out << ";\n";
                break;
            default:
                out << qasm_gate(inst.kind) << " q[" << inst.qubits[0] << "];\n";
        }
    }
    return out.str();
}

Circuit parse_qasm(std::string_view text) {
    std::vector<Pragma> pragmas;
    auto toks = Lexer(text).run(pragmas);
    return Parser(std::move(toks), std::move(pragmas)).run();
}

}  // namespace dyncirc
