#include "motsteen/motsteen.h"

#include <cstring>
#include <string>
#include <variant>

#include "motsteen/classical.hpp"
#include "motsteen/dual.hpp"
#include "motsteen/error.hpp"
#include "motsteen/ops.hpp"
#include "motsteen/pairing.hpp"
#include "motsteen/text.hpp"
#include "motsteen/verify.hpp"

using namespace motsteen;

struct mst_session {
    std::uint32_t ell;
    Preset preset;
    std::uint64_t fuel;
    std::string last_error;
    std::size_t last_pos = static_cast<std::size_t>(-1);
};

struct mst_element {
    std::variant<OpElement, GammaElement, ClassicalElement, TensorElement, BaseScalar> value;
};

namespace {

    mst_status status_of(ErrorCode c)
    {
        switch (c) {
            case ErrorCode::bad_argument: return MST_ERR_BAD_ARGUMENT;
            case ErrorCode::parse: return MST_ERR_PARSE;
            case ErrorCode::preset_mismatch: return MST_ERR_PRESET_MISMATCH;
            case ErrorCode::unsupported_scalar_commutation: return MST_ERR_UNSUPPORTED_SCALAR;
            case ErrorCode::fuel_exhausted: return MST_ERR_FUEL_EXHAUSTED;
            case ErrorCode::internal: return MST_ERR_INTERNAL;
        }
        return MST_ERR_INTERNAL;
    }

    template <typename Fn>
    mst_status guarded(mst_session* s, Fn&& fn)
    {
        if (!s)
            return MST_ERR_BAD_ARGUMENT;
        s->last_error.clear();
        s->last_pos = static_cast<std::size_t>(-1);
        try {
            fn();
            return MST_OK;
        }
        catch (const Error& e) {
            s->last_error = e.what();
            s->last_pos = e.position();
            return status_of(e.code());
        }
        catch (const std::exception& e) {
            s->last_error = e.what();
            return MST_ERR_INTERNAL;
        }
    }

    char* dup_string(const std::string& s)
    {
        char* out = new char[s.size() + 1];
        std::memcpy(out, s.c_str(), s.size() + 1);
        return out;
    }

    Preset preset_from(const char* name)
    {
        if (name && std::string_view(name) == "closed")
            return Preset::closed;
        if (name && std::string_view(name) == "universal")
            return Preset::universal;
        throw Error(ErrorCode::bad_argument, "preset must be \"closed\" or \"universal\"");
    }

    void require(bool cond, const char* msg)
    {
        if (!cond)
            throw Error(ErrorCode::bad_argument, msg);
    }

    bool want_structured(const char* format)
    {
        std::string_view f = format ? format : "text";
        if (f == "structured")
            return true;
        if (f == "text")
            return false;
        throw Error(ErrorCode::bad_argument, "format must be \"text\" or \"structured\"");
    }

}  // namespace

extern "C" {

mst_status mst_session_new(uint32_t prime, const char* preset, uint64_t fuel, mst_session** out)
{
    if (!out)
        return MST_ERR_BAD_ARGUMENT;
    try {
        if (!is_prime(prime))
            throw Error(ErrorCode::bad_argument, "prime required");
        Preset p = preset_from(preset);
        if (p == Preset::universal && prime != 2)
            throw Error(ErrorCode::bad_argument, "universal preset requires l = 2");
        *out = new mst_session{prime, p, fuel == 0 ? kDefaultFuel : fuel, {},
                               static_cast<std::size_t>(-1)};
        return MST_OK;
    }
    catch (const Error&) {
        return MST_ERR_BAD_ARGUMENT;
    }
}

void mst_session_free(mst_session* s)
{
    delete s;
}

const char* mst_last_error(const mst_session* s)
{
    return s ? s->last_error.c_str() : "null session";
}

size_t mst_last_error_position(const mst_session* s)
{
    return s ? s->last_pos : static_cast<std::size_t>(-1);
}

void mst_string_free(char* s)
{
    delete[] s;
}

void mst_element_free(mst_element* e)
{
    delete e;
}

mst_status mst_parse(mst_session* s, const char* mode, const char* text, mst_element** out)
{
    return guarded(s, [&]() {
        require(mode && text && out, "null argument");
        Mode m = mode_from_name(mode);
        mst_element* e = nullptr;
        switch (m) {
            case Mode::op:
                e = new mst_element{parse_op(text, s->ell, s->preset)};
                break;
            case Mode::dual:
                e = new mst_element{parse_dual(text, s->ell, s->preset)};
                break;
            case Mode::classical:
                e = new mst_element{parse_classical(text, s->ell)};
                break;
        }
        *out = e;
    });
}

const char* mst_element_kind(const mst_element* e)
{
    if (!e)
        return "null";
    switch (e->value.index()) {
        case 0: return "op";
        case 1: return "dual";
        case 2: return "classical";
        case 3: return "tensor";
        case 4: return "scalar";
    }
    return "?";
}

mst_status mst_format(mst_session* s, const mst_element* e, const char* format, char** out)
{
    return guarded(s, [&]() {
        require(e && out, "null argument");
        bool structured = want_structured(format);
        std::string text;
        if (const auto* v = std::get_if<OpElement>(&e->value))
            text = structured ? structured_op(*v).dump() : print_op(*v);
        else if (const auto* v = std::get_if<GammaElement>(&e->value))
            text = structured ? structured_dual(*v).dump() : print_dual(*v);
        else if (const auto* v = std::get_if<ClassicalElement>(&e->value))
            text = structured ? structured_classical(*v).dump() : print_classical(*v);
        else if (const auto* v = std::get_if<TensorElement>(&e->value))
            text = structured ? structured_tensor(*v).dump() : print_tensor(*v);
        else if (const auto* v = std::get_if<BaseScalar>(&e->value))
            text = structured ? structured_scalar(*v).dump() : print_scalar(*v);
        *out = dup_string(text);
    });
}

mst_status mst_element_equal(mst_session* s, const mst_element* a, const mst_element* b,
                             int* out)
{
    return guarded(s, [&]() {
        require(a && b && out, "null argument");
        *out = a->value == b->value ? 1 : 0;
    });
}

mst_status mst_multiply(mst_session* s, const mst_element* a, const mst_element* b,
                        mst_element** out)
{
    return guarded(s, [&]() {
        require(a && b && out, "null argument");
        if (const auto* x = std::get_if<OpElement>(&a->value)) {
            const auto* y = std::get_if<OpElement>(&b->value);
            require(y, "operands must have the same kind");
            *out = new mst_element{multiply(*x, *y, s->fuel)};
        }
        else if (const auto* x = std::get_if<GammaElement>(&a->value)) {
            const auto* y = std::get_if<GammaElement>(&b->value);
            require(y, "operands must have the same kind");
            *out = new mst_element{gamma_multiply(*x, *y)};
        }
        else if (const auto* x = std::get_if<ClassicalElement>(&a->value)) {
            const auto* y = std::get_if<ClassicalElement>(&b->value);
            require(y, "operands must have the same kind");
            *out = new mst_element{classical_multiply(*x, *y, s->fuel)};
        }
        else {
            throw Error(ErrorCode::bad_argument, "multiply expects op, dual or classical elements");
        }
    });
}

mst_status mst_normalize(mst_session* s, const mst_element* a, mst_element** out)
{
    return guarded(s, [&]() {
        require(a && out, "null argument");
        if (const auto* x = std::get_if<OpElement>(&a->value))
            *out = new mst_element{normalize(*x, s->fuel)};
        else if (const auto* x = std::get_if<ClassicalElement>(&a->value))
            *out = new mst_element{classical_normalize(*x, s->fuel)};
        else
            throw Error(ErrorCode::bad_argument, "normalize expects an op or classical element");
    });
}

mst_status mst_coproduct(mst_session* s, const mst_element* a, mst_element** out)
{
    return guarded(s, [&]() {
        require(a && out, "null argument");
        const auto* x = std::get_if<GammaElement>(&a->value);
        require(x, "coproduct expects a dual element");
        *out = new mst_element{coproduct(*x)};
    });
}

mst_status mst_counit(mst_session* s, const mst_element* a, mst_element** out)
{
    return guarded(s, [&]() {
        require(a && out, "null argument");
        const auto* x = std::get_if<GammaElement>(&a->value);
        require(x, "counit expects a dual element");
        *out = new mst_element{counit(*x)};
    });
}

mst_status mst_antipode(mst_session* s, const mst_element* a, mst_element** out)
{
    return guarded(s, [&]() {
        require(a && out, "null argument");
        const auto* x = std::get_if<GammaElement>(&a->value);
        require(x, "antipode expects a dual element");
        *out = new mst_element{antipode(*x)};
    });
}

mst_status mst_realize(mst_session* s, const mst_element* a, mst_element** out)
{
    return guarded(s, [&]() {
        require(a && out, "null argument");
        const auto* x = std::get_if<OpElement>(&a->value);
        require(x, "realize expects an op element");
        *out = new mst_element{realize(*x)};
    });
}

mst_status mst_pair(mst_session* s, const mst_element* op_elem, const mst_element* dual_elem,
                    mst_element** out)
{
    return guarded(s, [&]() {
        require(op_elem && dual_elem && out, "null argument");
        const auto* x = std::get_if<OpElement>(&op_elem->value);
        const auto* y = std::get_if<GammaElement>(&dual_elem->value);
        require(x && y, "pair expects an op element and a dual element");
        BaseScalar acc = BaseScalar::zero(s->ell, s->preset);
        for (const auto& [m, c] : y->terms())
            acc = acc + c * pair_element(*x, m);
        *out = new mst_element{acc};
    });
}

mst_status mst_basis(mst_session* s, const char* mode, long long p, long long q,
                     const char* format, char** out)
{
    return guarded(s, [&]() {
        require(mode && out, "null argument");
        Mode m = mode_from_name(mode);
        require(m != Mode::classical, "basis mode must be op or dual");
        bool structured = want_structured(format);
        *out = dup_string(structured ? structured_basis(m, p, q, s->ell).dump()
                                     : render_basis_text(m, p, q, s->ell));
    });
}

mst_status mst_pairing_matrix(mst_session* s, long long p, long long q, const char* format,
                              char** out)
{
    return guarded(s, [&]() {
        require(out, "null argument");
        bool structured = want_structured(format);
        *out = dup_string(structured ? structured_pairing_matrix(p, q, s->ell).dump()
                                     : render_pairing_matrix_text(p, q, s->ell));
    });
}

mst_status mst_table(mst_session* s, long long max_degree, const char* format, char** out)
{
    return guarded(s, [&]() {
        require(out, "null argument");
        require(max_degree >= 0 && max_degree <= 40, "table max-degree must be in [0, 40]");
        bool structured = want_structured(format);
        *out = dup_string(structured
                              ? structured_table(s->ell, s->preset, max_degree, s->fuel).dump()
                              : render_table_text(s->ell, s->preset, max_degree, s->fuel));
    });
}

mst_status mst_verify(mst_session* s, const char* suite, long long max_p, long long max_degree,
                      const char* format, char** out, long long* failures)
{
    return guarded(s, [&]() {
        require(suite && out && failures, "null argument");
        VerifyBounds bounds;
        bounds.max_p = max_p;
        bounds.max_degree = max_degree;
        bounds.fuel = s->fuel;
        VerifyReport report = run_verify(suite_from_name(suite), s->ell, s->preset, bounds);
        bool structured = want_structured(format);
        *out = dup_string(structured ? structured_report(report, s->ell, s->preset).dump()
                                     : render_report_text(report));
        *failures = static_cast<long long>(report.failures);
    });
}

}  // extern "C"
