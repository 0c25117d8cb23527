"""Sequence assembly: records, the built-in oracle gate, the n!
blowup, and JSON round-trips.  The negative-control tests deliberately
corrupt the evaluator to prove a mismatch cannot pass silently."""

from __future__ import annotations

import math

import pytest

import latinrect.sequences as seqmod
from latinrect.oracle import OracleLimitError
from latinrect.sequences import (
    GEN_DER,
    GLR3,
    TRAPEZOID,
    TRIANGLE,
    JobSpec,
    OracleMismatchError,
    SequenceRecord,
    apply_total,
    gen_der_seq,
    glr3_seq,
    run_job,
    trapezoid_seq,
    triangle_seq,
)

MENAGE = [0, 0, 1, 3, 16, 96, 675, 5413, 48800, 488592]


class TestGenDer:
    def test_menage_record(self):
        rec = gen_der_seq({0, 1}, 10)
        assert rec.terms == MENAGE
        assert rec.family == GEN_DER
        assert rec.offset == 1
        assert rec.reduced and rec.provenance == "engine"
        assert rec.params == {"shifts": [0, 1]}
        assert rec.term(3) == 1
        assert rec.last_n == 10

    def test_term_out_of_range(self):
        rec = gen_der_seq({0}, 3)
        with pytest.raises(IndexError):
            rec.term(0)
        with pytest.raises(IndexError):
            rec.term(4)

    def test_oracle_gate_fires(self, monkeypatch):
        calls = {"n": 0}
        true_eval = seqmod.umbra.umbral_eval_2row

        def corrupted(p):
            calls["n"] += 1
            return true_eval(p) + 1

        monkeypatch.setattr(seqmod.umbra, "umbral_eval_2row", corrupted)
        with pytest.raises(OracleMismatchError) as exc:
            gen_der_seq({0}, 6)
        assert calls["n"] > 0
        assert "tiles:" in exc.value.diagnostics
        assert "P_1" in exc.value.diagnostics

    def test_oracle_depth_zero_disables_gate(self, monkeypatch):
        true_eval = seqmod.umbra.umbral_eval_2row
        monkeypatch.setattr(
            seqmod.umbra, "umbral_eval_2row", lambda p: true_eval(p) + 1
        )
        rec = gen_der_seq({0}, 5, oracle_depth=0)
        assert rec.terms == [1, 2, 3, 10, 45]  # wrong on purpose, gate off

    def test_mirror_symmetry(self):
        a = gen_der_seq({0, 1, -2}, 9)
        b = gen_der_seq({0, -1, 2}, 9)
        assert a.terms == b.terms


class TestGlr3:
    def test_latin_record(self):
        rec = glr3_seq({0}, {0}, {0}, 6)
        assert rec.terms == [0, 0, 2, 24, 552, 21280]
        assert rec.params == {"s12": [0], "s13": [0], "s23": [0]}

    def test_empty_sets(self):
        rec = glr3_seq(set(), set(), set(), 6)
        assert rec.terms == [math.factorial(n) ** 2 for n in range(1, 7)]

    def test_oracle_gate_fires(self, monkeypatch):
        true_eval = seqmod.umbra.umbral_eval_3row
        monkeypatch.setattr(
            seqmod.umbra, "umbral_eval_3row", lambda p, n: true_eval(p, n) - 1
        )
        with pytest.raises(OracleMismatchError):
            glr3_seq({0}, {0}, {0}, 4)


class TestTrapezoid:
    def test_record(self):
        rec = trapezoid_seq(5)
        assert rec.offset == 3
        assert rec.terms == [1, 6, 68, 1670, 67295]
        assert rec.last_n == 7

    def test_oracle_gate_fires(self, monkeypatch):
        true_eval = seqmod.umbra.umbral_eval_trapezoid
        monkeypatch.setattr(
            seqmod.umbra, "umbral_eval_trapezoid", lambda p, n: true_eval(p, n) + 1
        )
        with pytest.raises(OracleMismatchError):
            trapezoid_seq(3)


class TestTriangle:
    def test_record(self):
        rec = triangle_seq(4)
        assert rec.offset == 3
        assert rec.terms == [1, 0, 4, 236]
        assert rec.provenance == "oracle"

    def test_depth_cap(self):
        with pytest.raises(OracleLimitError):
            triangle_seq(7)  # n would reach 9, past the brute-force cap


class TestTotals:
    def test_apply_total(self):
        rec = gen_der_seq({0}, 5)
        tot = apply_total(rec)
        assert tot.terms == [t * math.factorial(n)
                             for n, t in rec.indexed_terms()]
        assert not tot.reduced
        assert apply_total(tot) is tot  # idempotent once unreduced

    def test_offset_respected(self):
        tot = apply_total(trapezoid_seq(3))
        assert tot.terms[0] == 1 * math.factorial(3)


class TestJson:
    def test_roundtrip(self):
        rec = glr3_seq({0, 1}, set(), {-1}, 4)
        data = rec.to_json_dict()
        assert all(isinstance(t, str) for t in data["terms"])
        back = SequenceRecord.from_json_dict(data)
        assert back == rec


class TestRunJob:
    def test_dispatch(self):
        rec = run_job(JobSpec(GEN_DER, {"shifts": [0, 1]}, 6))
        assert rec.terms == MENAGE[:6]
        rec = run_job(JobSpec(GLR3, {"s12": [0], "s13": [0], "s23": [0]}, 4))
        assert rec.terms == [0, 0, 2, 24]
        rec = run_job(JobSpec(TRAPEZOID, {}, 3))
        assert rec.terms == [1, 6, 68]
        rec = run_job(JobSpec(TRIANGLE, {}, 3))
        assert rec.terms == [1, 0, 4]

    def test_total_flag(self):
        rec = run_job(JobSpec(GEN_DER, {"shifts": [0]}, 4, total=True))
        assert rec.terms == [0, 2, 12, 216]

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            run_job(JobSpec("hexagon", {}, 3))

    def test_zero_terms_rejected(self):
        with pytest.raises(ValueError):
            run_job(JobSpec(GEN_DER, {"shifts": [0]}, 0))
