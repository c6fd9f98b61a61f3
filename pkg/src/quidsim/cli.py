"""
Command line interface.

    quidsim teleport-statevector --alpha=-0.57659+0.24170i --beta=-0.59478-0.50532i --forced-branch 1,0
    quidsim teleport-counts --prep-bit 0 --shots 1024 --seed 7 --readout-flip-p 0.089
    quidsim bloch --alpha 1 --beta 0
    quidsim bell --shots 1000 --seed 3
    quidsim remote-entangle-demo --alpha 0.6 --beta 0.8i --decoys 2 --resolution 0.05

Options may also come from a ``key=value`` file passed with ``--config``
(keys are the long option names, with or without dashes); command line flags
win. ``QUIDSIM_SEED`` supplies the seed when ``--seed`` is absent; otherwise a
fresh seed is drawn and echoed in the output.

Exit codes: 0 success, 2 usage or validation error, 1 internal error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import secrets
import sys
from typing import Sequence

from . import __version__
from .errors import AmbiguousMatch, NoMatch, NotNormalized, QuidsimError
from .gates import bloch_coords, hadamard, normalize_pair, pauli_x
from .measure import Counts, bitstring, measure
from .noise import NoiseConfig
from .quid import QuID, QuidRegistry
from .rng import SEED_BITS, RandomSource
from .statevec import apply_controlled, apply_single, new_basis_state
from .teleport import run_teleport_experiment, run_teleport_forced, run_teleport_statevector

SCHEMA_VERSION = 1
SEED_ENV = "QUIDSIM_SEED"

_COMPLEX_RE = re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?:\s*(?P<sign>[+-])\s*(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?
      | (?P<pure>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*[ij]
    )\s*$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``a+bi``, ``a-bi`` or ``bi`` (``j`` also accepted)."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"malformed complex number {text!r}")
    if m.group("re") is not None:
        re_part = float(m.group("re"))
        if m.group("sign") is None:
            return complex(re_part, 0.0)
        im = float(m.group("im")) if m.group("im") else 1.0
        return complex(re_part, im if m.group("sign") == "+" else -im)
    pure = m.group("pure")
    if pure in ("", "+"):
        return 1j
    if pure == "-":
        return -1j
    return complex(0.0, float(pure))


def _bit(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError(f"expected 0 or 1, got {text!r}")
    return int(text)


def _branch(text: str) -> tuple[int, int]:
    parts = re.split(r"[,\s]+", text.strip())
    if len(parts) == 1 and len(parts[0]) == 2:
        parts = list(parts[0])
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two bits like '1,0', got {text!r}")
    return _bit(parts[0]), _bit(parts[1])


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _seed(text: str) -> int:
    try:
        n = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= n < 2**SEED_BITS:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned {SEED_BITS}-bit integer")
    return n


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a probability, got {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {p}")
    return p


def _nonneg_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v >= 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return v


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _vector(state) -> list[list[float]]:
    return [_pair(complex(z)) for z in state]


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return _seed(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{SEED_ENV}: {exc}") from None
    return secrets.randbits(SEED_BITS)


class UsageError(Exception):
    pass


def _qubit_args(args) -> tuple[complex, complex]:
    if args.alpha is None or args.beta is None:
        raise UsageError("--alpha and --beta are required")
    return normalize_pair(args.alpha, args.beta)


def cmd_teleport_statevector(args) -> str:
    alpha, beta = _qubit_args(args)
    if args.forced_branch is not None:
        seed = None
        result = run_teleport_forced((alpha, beta), *args.forced_branch)
    else:
        seed = _resolve_seed(args)
        result = run_teleport_statevector((alpha, beta), RandomSource(seed))
    return _dump({
        "schema_version": SCHEMA_VERSION,
        "command": "teleport-statevector",
        "prepared": [_pair(alpha), _pair(beta)],
        "branch": [result.m_psi, result.m_a],
        "branch_probability": result.probability,
        "corrections": list(result.corrections_applied),
        "statevector": _vector(result.final_state),
        "bob": [_pair(z) for z in result.bob_amplitudes],
        "seed": seed,
    })


def _counts_csv(counts: Counts) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["bitstring", "count"])
    for key in sorted(counts.counts):
        writer.writerow([key, counts.counts[key]])
    return buf.getvalue()


def cmd_teleport_counts(args) -> str:
    if args.prep_bit is None:
        raise UsageError("--prep-bit is required")
    seed = _resolve_seed(args)
    noise = NoiseConfig(args.readout_flip_p, args.depolarizing_p, enabled=not args.no_noise)
    counts, error_rate = run_teleport_experiment(args.prep_bit, args.shots, noise, RandomSource(seed))
    if args.format == "csv":
        return _counts_csv(counts)
    return _dump({
        "schema_version": SCHEMA_VERSION,
        "command": "teleport-counts",
        "prep_bit": args.prep_bit,
        "counts": dict(counts.counts),
        "shots": counts.shots,
        "bob_error_rate": error_rate,
        "noise": {
            "enabled": noise.enabled,
            "readout_flip_p": noise.readout_flip_p,
            "depolarizing_p": noise.depolarizing_p,
        },
        "seed": seed,
    })


def cmd_bloch(args) -> str:
    alpha, beta = _qubit_args(args)
    x, y, z = bloch_coords(alpha, beta)
    return _dump({"schema_version": SCHEMA_VERSION, "command": "bloch", "x": x, "y": y, "z": z})


def _correlation_counts(state, qubits, shots: int, rng: RandomSource) -> Counts:
    hist: dict[str, int] = {}
    for shot in range(shots):
        sub = rng.spawn(shot)
        s, bits = state, []
        for q in qubits:
            rec, s = measure(s, q, sub)
            bits.append(rec.outcome)
        key = bitstring(bits)
        hist[key] = hist.get(key, 0) + 1
    return Counts(hist, width=len(qubits), shots=shots)


def cmd_bell(args) -> str:
    seed = _resolve_seed(args)
    state = apply_controlled(apply_single(new_basis_state(2), 0, hadamard()), 0, 1, pauli_x())
    counts = _correlation_counts(state, (0, 1), args.shots, RandomSource(seed))
    return _dump({
        "schema_version": SCHEMA_VERSION,
        "command": "bell",
        "statevector": _vector(state),
        "counts": dict(counts.counts),
        "shots": counts.shots,
        "seed": seed,
    })


def cmd_remote_entangle_demo(args) -> str:
    seed = _resolve_seed(args)
    if args.alpha is None and args.beta is None:
        bob_quid = QuID(0.66915 - 0.64644j, 0.36011 + 0.06845j)
    else:
        bob_quid = QuID(*_qubit_args(args))
    registry = QuidRegistry()
    alice = registry.new_qubit(QuID(1, 0), name="A")
    bob = registry.new_qubit(bob_quid, name="B")
    for k in range(1, args.decoys + 1):
        registry.new_qubit(
            QuID.from_unnormalized(bob_quid.alpha * complex(math.cos(k * args.decoy_offset), math.sin(k * args.decoy_offset)), bob_quid.beta),
            name=f"decoy{k}",
        )
    estimate = registry.tomography(bob, args.resolution)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "remote-entangle-demo",
        "peer_quid": [_pair(bob_quid.alpha), _pair(bob_quid.beta)],
        "peer_estimate": [_pair(estimate.alpha), _pair(estimate.beta)],
        "resolution": args.resolution,
        "tol": args.tol,
        "registered": len(registry),
    }
    try:
        matched = registry.find(estimate, args.tol, exclude=alice)
        state = registry.remote_entangle(alice, estimate, args.tol)
    except (NoMatch, AmbiguousMatch) as exc:
        payload.update(status="no_match" if isinstance(exc, NoMatch) else "ambiguous_match", detail=str(exc))
        payload["seed"] = seed
        return _dump(payload)
    pair = (alice.position, matched.position)
    counts = _correlation_counts(state, pair, args.shots, RandomSource(seed))
    agree = sum(n for key, n in counts.counts.items() if key[0] == key[1])
    payload.update(
        status="entangled",
        matched=matched.name,
        statevector=_vector(state),
        counts=dict(counts.counts),
        shots=counts.shots,
        correlated_fraction=agree / counts.shots,
        seed=seed,
    )
    return _dump(payload)


COMMANDS = {
    "teleport-statevector": cmd_teleport_statevector,
    "teleport-counts": cmd_teleport_counts,
    "bloch": cmd_bloch,
    "bell": cmd_bell,
    "remote-entangle-demo": cmd_remote_entangle_demo,
}


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="key=value file mirroring the long options")
    common.add_argument("--seed", type=_seed, default=None)

    qubit = argparse.ArgumentParser(add_help=False)
    qubit.add_argument("--alpha", type=parse_complex, help="amplitude of |0>, e.g. -0.57659+0.24170i")
    qubit.add_argument("--beta", type=parse_complex, help="amplitude of |1>")

    shots = argparse.ArgumentParser(add_help=False)
    shots.add_argument("--shots", type=_positive_int, default=1024)

    parser = argparse.ArgumentParser(prog="quidsim", description="QuID remote entanglement and teleportation simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    subs = {}

    p = sub.add_parser("teleport-statevector", parents=[common, qubit], help="final three-qubit statevector")
    p.add_argument("--forced-branch", type=_branch, metavar="MPSI,MA", help="deterministic branch, e.g. 1,0")
    subs["teleport-statevector"] = p

    p = sub.add_parser("teleport-counts", parents=[common, shots], help="sampled teleport experiment")
    p.add_argument("--prep-bit", type=_bit)
    p.add_argument("--readout-flip-p", type=_probability, default=0.0)
    p.add_argument("--depolarizing-p", type=_probability, default=0.0)
    p.add_argument("--no-noise", action="store_true", help="disable the noise model")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    subs["teleport-counts"] = p

    p = sub.add_parser("bloch", parents=[common, qubit], help="Bloch vector of a qubit")
    subs["bloch"] = p

    p = sub.add_parser("bell", parents=[common, shots], help="Bell pair statevector and correlations")
    subs["bell"] = p

    p = sub.add_parser("remote-entangle-demo", parents=[common, qubit, shots], help="entangle by QuID lookup")
    p.add_argument("--resolution", type=_nonneg_float, default=0.0, help="tomography resolution")
    p.add_argument("--tol", type=_nonneg_float, default=1e-6, help="QuID match tolerance")
    p.add_argument("--decoys", type=int, default=0, help="extra qubits with QuIDs near the peer's")
    p.add_argument("--decoy-offset", type=float, default=0.01, help="phase step between decoy QuIDs")
    subs["remote-entangle-demo"] = p
    return parser, subs


_VALUE_FLAGS = ("--alpha", "--beta")


def _glue_values(argv: Sequence[str]) -> list[str]:
    # "--alpha -0.5+0.1i" would be read as an option; rewrite to "--alpha=-0.5+0.1i"
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def read_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.lstrip("-").replace("-", "_")] = value
    return values


def _apply_config(parser: argparse.ArgumentParser, path: str) -> None:
    known = {a.dest: a for a in parser._actions}
    defaults = {}
    for key, value in read_config(path).items():
        action = known.get(key)
        if action is None or key in ("config", "help"):
            raise UsageError(f"{path}: unknown option {key!r} for this command")
        if action.nargs == 0:
            defaults[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            # string defaults go through the action's type converter
            defaults[key] = value
    parser.set_defaults(**defaults)


def main(argv: Sequence[str] | None = None) -> int:
    argv = _glue_values(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        pre, _ = parser.parse_known_args(argv)
        if getattr(pre, "config", None):
            _apply_config(subs[pre.command], pre.config)
        args = parser.parse_args(argv)
        out = COMMANDS[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, NotNormalized, OSError) as exc:
        print(f"quidsim: error: {exc}", file=sys.stderr)
        return 2
    except QuidsimError as exc:
        print(f"quidsim: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"quidsim: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
