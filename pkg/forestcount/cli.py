"""
Forest Counting CLI
Counting, term tables, sequences, enumeration, verification and the involution

Exit codes:
    0  success
    1  verification failure, invalid forest, or internal error
    2  usage, domain, or capacity error
"""

import argparse
import os
import sys
import traceback
from typing import Callable, List, Optional, TextIO

from forestcount.crosscheck import run_checks
from forestcount.enumeration import DEFAULT_LIMIT, KINDS, count_forests, enumerate_forests
from forestcount.errors import CapacityError, DomainError, InvariantViolation, ValidationError
from forestcount.exactmath import cayley_sequence, takacs_count, takacs_count_eq1, takacs_sequence
from forestcount.forest_model import (
    PPRForest,
    RootedForest,
    UnrootedForest,
    canonical_encode,
    encode_rooted,
    encode_unrooted,
    encoding_hex,
    validate_ppr,
)
from forestcount.formats import (
    FORMATS,
    forest_to_dot,
    forest_to_json,
    ppr_from_json,
    ppr_to_json,
    read_json_lines,
    render_terms,
    terms_rows,
    write_json_line,
)
from forestcount.involution import DEFAULT_VERIFY_MAX_N, apply_with_action, describe_action, verify_involution
from forestcount.observability import create_operation_span, init_observability

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

METHODS = ('eq2', 'eq1', 'bruteforce')


class ForestCLI:
    """
    Command-line front end for the forest counting library

    Subcommands: count, terms, sequence, enumerate, verify, apply.
    Every computational setting (limits, worker count) is a flag; nothing is
    read from the environment.

    Usage:
        from forestcount.cli import ForestCLI

        if __name__ == "__main__":
            sys.exit(ForestCLI().run())
    """

    def __init__(
        self,
        prog: str = 'forestcount',
        stdin: Optional[TextIO] = None,
        stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None
    ):
        """
        Initialize the CLI

        Args:
            prog: Program name shown in help text
            stdin/stdout/stderr: Stream overrides (default: the sys streams at run time)
        """
        self.prog = prog
        self._stdin = stdin
        self._stdout = stdout
        self._stderr = stderr
        self.parser = self._build_parser()

    # ------------------------------------------------------------------
    # Streams
    # ------------------------------------------------------------------

    @property
    def stdin(self) -> TextIO:
        return self._stdin or sys.stdin

    @property
    def stdout(self) -> TextIO:
        return self._stdout or sys.stdout

    @property
    def stderr(self) -> TextIO:
        return self._stderr or sys.stderr

    def _out(self, text: str = ""):
        print(text, file=self.stdout)

    def _err(self, text: str):
        print(text, file=self.stderr)

    # ------------------------------------------------------------------
    # Parser
    # ------------------------------------------------------------------

    def _standard_arguments(self) -> argparse.ArgumentParser:
        """Arguments shared by every subcommand"""
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            '--debug',
            action='store_true',
            help='Print tracebacks and observability status to stderr'
        )
        common.add_argument(
            '--config-dir',
            type=str,
            default=None,
            help='Directory holding observability_config.yaml (default: config/)'
        )
        return common

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog=self.prog,
            description="Count forests of unrooted trees on n labeled vertices and "
                        "verify the sign-reversing involution behind the count.",
            formatter_class=argparse.RawDescriptionHelpFormatter
        )
        common = self._standard_arguments()
        commands = parser.add_subparsers(dest='command', metavar='COMMAND')
        commands.required = True

        count = commands.add_parser('count', parents=[common], help='Number of unrooted forests on [n]')
        count.add_argument('--n', type=int, required=True)
        count.add_argument('--method', choices=METHODS, default='eq2',
                           help='eq2: term sum; eq1: rational form; bruteforce: enumeration')
        self._add_capacity_arguments(count)
        count.set_defaults(handler=self.cmd_count)

        terms = commands.add_parser('terms', parents=[common], help='Table of the alternating sum terms')
        terms.add_argument('--n', type=int, required=True)
        terms.add_argument('--format', choices=FORMATS, default='plain')
        terms.set_defaults(handler=self.cmd_terms)

        sequence = commands.add_parser('sequence', parents=[common], help='Counts for n = 0..max-n')
        sequence.add_argument('--max-n', type=int, required=True)
        sequence.add_argument('--kind', choices=('unrooted', 'rooted'), default='unrooted',
                              help='unrooted: A001858 from n=0; rooted: A000272 from n=1')
        sequence.set_defaults(handler=self.cmd_sequence)

        enumerate_cmd = commands.add_parser('enumerate', parents=[common], help='Stream every forest of a family')
        enumerate_cmd.add_argument('--n', type=int, required=True)
        enumerate_cmd.add_argument('--kind', choices=KINDS, default='unrooted')
        enumerate_cmd.add_argument('--j', type=int, default=None, help='Pair-count filter (ppr only)')
        enumerate_cmd.add_argument('--roots', type=str, default=None,
                                   help='Comma-separated root set (rooted only; default: every root set)')
        enumerate_cmd.add_argument('--format', choices=FORMATS, default='json')
        enumerate_cmd.add_argument('--out-dir', type=str, default=None, help='Target directory for --format dot')
        enumerate_cmd.add_argument('--limit', type=int, default=DEFAULT_LIMIT, help='Enumeration capacity')
        enumerate_cmd.set_defaults(handler=self.cmd_enumerate)

        verify = commands.add_parser('verify', parents=[common], help='Exhaustively verify the involution')
        verify.add_argument('--max-n', type=int, default=DEFAULT_VERIFY_MAX_N)
        self._add_capacity_arguments(verify)
        verify.set_defaults(handler=self.cmd_verify)

        apply_cmd = commands.add_parser('apply', parents=[common],
                                        help='Apply the involution to PPR forests read as JSON lines from stdin')
        apply_cmd.add_argument('--format', choices=('json', 'dot'), default='json',
                               help='dot takes exactly one input forest')
        apply_cmd.set_defaults(handler=self.cmd_apply)

        return parser

    @staticmethod
    def _add_capacity_arguments(parser: argparse.ArgumentParser):
        parser.add_argument('--limit', type=int, default=DEFAULT_LIMIT, help='Enumeration capacity')
        parser.add_argument('--threads', type=int, default=1, help='Worker processes for exhaustive counting')

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def cmd_count(self, args) -> int:
        self._check_threads(args.threads)
        if args.method == 'eq2':
            value = takacs_count(args.n)
        elif args.method == 'eq1':
            value = takacs_count_eq1(args.n)
        else:
            value = count_forests('unrooted', args.n, limit=args.limit, workers=args.threads)
        self._out(str(value))
        return EXIT_OK

    def cmd_terms(self, args) -> int:
        text = render_terms(terms_rows(args.n), args.format)
        self.stdout.write(text)
        return EXIT_OK

    def cmd_sequence(self, args) -> int:
        if args.kind == 'rooted':
            values = cayley_sequence(args.max_n)
        else:
            values = takacs_sequence(args.max_n)
        self._out(", ".join(str(value) for value in values))
        return EXIT_OK

    def cmd_enumerate(self, args) -> int:
        if args.j is not None and args.kind != 'ppr':
            raise DomainError("--j applies to --kind ppr only")
        if args.roots is not None and args.kind != 'rooted':
            raise DomainError("--roots applies to --kind rooted only")
        if args.format == 'csv':
            raise DomainError("csv output is only available for the terms table")
        if args.format == 'dot' and not args.out_dir:
            raise DomainError("--format dot writes one file per forest and needs --out-dir")

        roots = self._parse_roots(args.roots)
        stream = enumerate_forests(args.kind, args.n, args.j, roots, args.limit)

        if args.format == 'dot':
            os.makedirs(args.out_dir, exist_ok=True)
            written = 0
            for index, structure in enumerate(stream):
                path = os.path.join(args.out_dir, f"{args.kind}_n{args.n}_{index:06d}.dot")
                with open(path, 'w') as f:
                    f.write(forest_to_dot(structure))
                self._out(path)
                written += 1
            if args.debug:
                self._err(f"✓ Wrote {written} DOT file(s) to {args.out_dir}")
            return EXIT_OK

        for structure in stream:
            if args.format == 'plain':
                self._out(encoding_hex(self._encode(structure)))
            else:
                write_json_line(forest_to_json(structure), self.stdout)
        return EXIT_OK

    def cmd_verify(self, args) -> int:
        self._check_threads(args.threads)
        if args.max_n < 0:
            raise DomainError(f"--max-n must be >= 0, got {args.max_n}")
        if args.max_n > args.limit:
            raise CapacityError("verify", args.max_n, args.limit)

        failures = []
        for n in range(args.max_n + 1):
            report = verify_involution(n, limit=args.limit, workers=args.threads)
            checks = run_checks(n, limit=args.limit)

            document = report.to_dict()
            document['crosscheck'] = checks.to_dict()
            document['passed'] = report.passed and checks.passed
            write_json_line(document, self.stdout)

            if not document['passed']:
                failures.append(n)

        if failures:
            self._err(f"❌ Verification failed for n = {', '.join(str(n) for n in failures)}")
            return EXIT_FAILURE

        if args.debug:
            self._err(f"✅ All checks passed for n = 0..{args.max_n}")
        return EXIT_OK

    def cmd_apply(self, args) -> int:
        documents = read_json_lines(self.stdin)
        if args.format == 'dot':
            documents = list(documents)
            if len(documents) != 1:
                raise DomainError(f"--format dot renders exactly one forest, got {len(documents)} input line(s)")

        for document in documents:
            forest = ppr_from_json(document)
            violation = validate_ppr(forest)
            if violation:
                raise ValidationError(violation)

            action, image = apply_with_action(forest)
            if args.format == 'dot':
                self.stdout.write(forest_to_dot(image))
            else:
                write_json_line(ppr_to_json(image), self.stdout)
            self._err(f"action: {describe_action(action)}")
        return EXIT_OK

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    @staticmethod
    def _check_threads(threads: int):
        if threads < 1:
            raise DomainError(f"--threads must be >= 1, got {threads}")

    @staticmethod
    def _parse_roots(text: Optional[str]) -> Optional[List[int]]:
        if text is None:
            return None
        try:
            return [int(part) for part in text.split(',') if part.strip()]
        except ValueError:
            raise DomainError(f"--roots must be a comma-separated list of integers, got {text!r}")

    @staticmethod
    def _encode(structure) -> bytes:
        if isinstance(structure, PPRForest):
            return canonical_encode(structure)
        if isinstance(structure, UnrootedForest):
            return encode_unrooted(structure)
        if isinstance(structure, RootedForest):
            return encode_rooted(structure)
        raise DomainError(f"cannot encode {type(structure).__name__}")

    # ------------------------------------------------------------------
    # Entry
    # ------------------------------------------------------------------

    def run(self, argv: Optional[List[str]] = None) -> int:
        """
        Parse argv and dispatch

        Returns:
            Exit code (0, 1 or 2)
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            # argparse exits 2 on usage errors and 0 for --help
            return e.code if isinstance(e.code, int) else EXIT_USAGE

        init_observability(config_dir=args.config_dir, verbose=args.debug)
        handler: Callable = args.handler

        try:
            with create_operation_span(f"cli.{args.command}", **{"cli.command": args.command}):
                return handler(args)

        except DomainError as e:
            self._err(f"❌ Error: {e}")
            return EXIT_USAGE

        except ValidationError as e:
            self._err(f"❌ Invalid PPR forest: {e.violation}")
            return EXIT_FAILURE

        except InvariantViolation as e:
            self._err(f"❌ Internal invariant violated: {e}")
            if args.debug:
                traceback.print_exc(file=self.stderr)
            return EXIT_FAILURE

        except KeyboardInterrupt:
            self._err("\n👋 Interrupted")
            return EXIT_FAILURE

        except Exception as e:
            self._err(f"❌ Error: {e}")
            if args.debug:
                traceback.print_exc(file=self.stderr)
            return EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    """Console entry point"""
    return ForestCLI().run(argv)
