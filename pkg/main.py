import functools
import logging
import os
import sys
import traceback

import click

from lipnorm import commands
from lipnorm.config import DEFAULT_SEED, LOG_LEVEL, PORT, RunConfig, resolve_cap
from lipnorm.documents import dump, load_document
from lipnorm.errors import DocumentError, LipnormError
from lipnorm.reproduce import report, run_reproduce as reproduce_items
from lipnorm.selftest import run_selftest as run_suites, summary_frame

# Configure logging
logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO), stream=sys.stderr)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2


def error_payload(e):
    return {
        'success': False,
        'error': type(e).__name__,
        'message': str(e),
        'field': getattr(e, 'field', None),
    }


def guarded(run):
    """Turn exceptions from a run_* function into (exit code, error JSON)"""
    @functools.wraps(run)
    def wrapper(config):
        try:
            return run(config)
        except DocumentError as e:
            logger.error(f"Bad document: {e}")
            return EXIT_IO, error_payload(e)
        except LipnormError as e:
            logger.error(f"{type(e).__name__}: {e}")
            return EXIT_DOMAIN, error_payload(e)
        except (OSError, ValueError) as e:
            logger.error(f"Cannot read input: {e}")
            return EXIT_IO, error_payload(e)
        except Exception as e:
            logger.error(f"{config.subcommand} failed: {e}")
            logger.debug(traceback.format_exc())
            return EXIT_DOMAIN, error_payload(e)
    return wrapper


def _document(config):
    path = config.inputs[0]
    return load_document(path), os.path.dirname(os.path.abspath(path))


@guarded
def run_validate(config):
    doc, base = _document(config)
    payload = commands.validate_document(doc, base, config.decimal)
    return (EXIT_OK if payload['valid'] else EXIT_DOMAIN), payload


@guarded
def run_norm(config):
    doc, base = _document(config)
    return EXIT_OK, commands.norm_document(doc, base, config.kind, config.decimal)


@guarded
def run_extend(config):
    doc, base = _document(config)
    return EXIT_OK, commands.extend_document(doc, base, config.variant, config.decimal)


@guarded
def run_extreme_check(config):
    doc, base = _document(config)
    return EXIT_OK, commands.extreme_check_document(doc, base, config.kind, config.decimal)


@guarded
def run_enum(config):
    doc, base = _document(config)
    payload, frame = commands.enum_document(doc, base, config.kind, config.dimension_cap, config.decimal)
    if config.csv_path:
        filename = None if config.csv_path == 'auto' else config.csv_path
        payload['csv'] = commands.save_to_csv(frame, filename)
    return EXIT_OK, payload


@guarded
def run_johnson(config):
    doc, base = _document(config)
    return EXIT_OK, commands.johnson_document(doc, base, config.kind, config.decimal)


@guarded
def run_inductive(config):
    doc, base = _document(config)
    return EXIT_OK, commands.inductive_document(doc, base, config.dimension_cap, config.decimal)


@guarded
def run_reproduce(config):
    items = reproduce_items(config.dimension_cap, config.corrupt)
    for item in items:
        click.echo(f"({item.key}) {item.status:<11} {item.name}: {item.detail}", err=True)
    payload = report(items)
    return (EXIT_OK if payload['success'] else EXIT_DOMAIN), payload


@guarded
def run_selftest(config):
    results = run_suites(config.seed, config.instances)
    click.echo(summary_frame(results).to_string(index=False), err=True)
    payload = {
        'success': all(r.ok for r in results),
        'seed': config.seed,
        'suites': [r.as_dict() for r in results],
    }
    return (EXIT_OK if payload['success'] else EXIT_DOMAIN), payload


def emit(config, code, payload):
    text = dump(payload)
    if config.output:
        try:
            with open(config.output, 'w', encoding='utf-8') as fh:
                fh.write(text + '\n')
        except OSError as e:
            logger.error(f"Cannot write {config.output}: {e}")
            click.echo(dump(error_payload(e)))
            sys.exit(EXIT_IO)
        logger.info(f"Wrote {config.output}")
    else:
        click.echo(text)
    sys.exit(code)


kind_option = click.option('--kind', type=click.Choice(['bl', 'fm'], case_sensitive=False),
                           default='bl', show_default=True, help='Unit ball: Dudley (bl) or Fortet-Mourier (fm)')
cap_option = click.option('--cap', type=click.IntRange(min=1), default=None,
                          help='Dimension cap for vertex enumeration (default: LIPNORM_CAP)')
decimal_option = click.option('--decimal', type=click.IntRange(min=0), default=None,
                              help='Add k-digit decimal copies of every rational')
output_option = click.option('--output', type=click.Path(dir_okay=False), default=None,
                             help='Write JSON here instead of standard output')
document_argument = click.argument('document', type=click.Path(dir_okay=False))


def _config(subcommand, inputs=(), cap=None, **kwargs):
    return RunConfig(subcommand=subcommand, inputs=tuple(inputs), dimension_cap=resolve_cap(cap), **kwargs)


@click.group()
def cli():
    """Exact dual norms and unit-ball extreme points on finite metric spaces."""
    pass


@cli.command()
@document_argument
@decimal_option
@output_option
def validate(document, decimal, output):
    """Check the metric axioms of a metric document."""
    config = _config('validate', [document], decimal=decimal, output=output)
    emit(config, *run_validate(config))


@cli.command()
@document_argument
@kind_option
@decimal_option
@output_option
def norm(document, kind, decimal, output):
    """Dual norm of a molecular measure, with an extreme-point witness."""
    config = _config('norm', [document], kind=kind, decimal=decimal, output=output)
    emit(config, *run_norm(config))


@cli.command()
@document_argument
@click.option('--variant', type=click.Choice(['mcshane', 'tietze', 'mirrored'], case_sensitive=False),
              default=None, help='Override the variant named in the document')
@decimal_option
@output_option
def extend(document, variant, decimal, output):
    """Extend boundary values from a subset to the whole space."""
    config = _config('extend', [document], variant=variant, decimal=decimal, output=output)
    emit(config, *run_extend(config))


@cli.command('extreme-check')
@document_argument
@kind_option
@decimal_option
@output_option
def extreme_check(document, kind, decimal, output):
    """Certify whether a function is an extreme point of the unit ball."""
    config = _config('extreme-check', [document], kind=kind, decimal=decimal, output=output)
    emit(config, *run_extreme_check(config))


@cli.command('enum-extremes')
@document_argument
@kind_option
@cap_option
@click.option('--csv', 'csv_path', is_flag=False, flag_value='auto', default=None,
              help='Also export the vertex list as CSV (timestamped temp file if no path)')
@decimal_option
@output_option
def enum_extremes(document, kind, cap, csv_path, decimal, output):
    """List every extreme point of the unit ball over a metric space."""
    config = _config('enum-extremes', [document], cap, kind=kind, csv_path=csv_path,
                     decimal=decimal, output=output)
    emit(config, *run_enum(config))


@cli.command('johnson-check')
@document_argument
@kind_option
@decimal_option
@output_option
def johnson_check(document, kind, decimal, output):
    """Test membership in the finite Johnson set."""
    config = _config('johnson-check', [document], kind=kind, decimal=decimal, output=output)
    emit(config, *run_johnson(config))


@cli.command('inductive-set')
@document_argument
@cap_option
@decimal_option
@output_option
def inductive_set(document, cap, decimal, output):
    """Functions reachable by extension from two-point extremes."""
    config = _config('inductive-set', [document], cap, decimal=decimal, output=output)
    emit(config, *run_inductive(config))


@cli.command()
@cap_option
@click.option('--corrupt', is_flag=True, help='Perturb the built-in data; every item must then fail')
@output_option
def reproduce(cap, corrupt, output):
    """Check the built-in worked examples."""
    config = _config('reproduce', cap=cap, corrupt=corrupt, output=output)
    emit(config, *run_reproduce(config))


@cli.command()
@click.option('--seed', type=int, default=DEFAULT_SEED, show_default=True)
@click.option('--instances', type=click.IntRange(min=1), default=None,
              help='Instances per suite (default: each suite\'s own count)')
@output_option
def selftest(seed, instances, output):
    """Run the randomized invariant suites."""
    config = _config('selftest', seed=seed, instances=instances, output=output)
    emit(config, *run_selftest(config))


@cli.command()
@click.option('--port', type=int, default=PORT, show_default=True)
@click.option('--debug', is_flag=True)
def serve(port, debug):
    """Run the HTTP surface with the Flask development server."""
    from app import create_app
    logger.info(f"Starting server on port {port}")
    create_app().run(host='0.0.0.0', port=port, debug=debug)


if __name__ == '__main__':
    cli()
