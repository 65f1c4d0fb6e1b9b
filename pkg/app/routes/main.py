import logging
import traceback
from functools import wraps

from flask import Blueprint, current_app, jsonify, request

import lipnorm
from lipnorm import commands
from lipnorm.config import resolve_cap
from lipnorm.errors import DocumentError, LipnormError
from lipnorm.reproduce import report, run_reproduce

logger = logging.getLogger(__name__)

main_blueprint = Blueprint('main', __name__)

ENDPOINTS = ['/validate', '/norm', '/extend', '/extreme-check', '/enum-extremes',
             '/johnson-check', '/inductive-set', '/reproduce']


def error_reply(e, status):
    return jsonify({
        'success': False,
        'error': type(e).__name__,
        'message': str(e),
        'field': getattr(e, 'field', None),
    }), status


def query_options():
    """kind, cap and decimal from the query string"""
    decimal = request.args.get('decimal')
    return {
        'kind': request.args.get('kind', 'bl'),
        'cap': resolve_cap(request.args.get('cap', current_app.config['LIPNORM_CAP'])),
        'decimal': int(decimal) if decimal is not None else None,
    }


def json_document(f):
    """Decorator to parse the JSON body and map library errors to replies"""
    @wraps(f)
    def decorated_function(*args, **kwargs):
        doc = request.get_json(silent=True)
        try:
            if not isinstance(doc, dict):
                raise DocumentError("Request body must be a JSON object")
            if isinstance(doc.get('space'), str):
                raise DocumentError("Spaces must be given inline", 'space')
            payload = f(doc, query_options(), *args, **kwargs)
        except DocumentError as e:
            return error_reply(e, 400)
        except LipnormError as e:
            logger.error(f"{request.path}: {type(e).__name__}: {e}")
            return error_reply(e, 422)
        except ValueError as e:
            return error_reply(e, 400)
        except Exception as e:
            logger.error(f"{request.path} failed: {e}")
            logger.error(traceback.format_exc())
            return error_reply(e, 500)
        return jsonify({'success': True, **payload})
    return decorated_function


@main_blueprint.route('/')
def index():
    """Service description"""
    return jsonify({
        'service': 'lipnorm',
        'version': lipnorm.__version__,
        'endpoints': ENDPOINTS,
        'cap': current_app.config['LIPNORM_CAP'],
    })


@main_blueprint.route('/validate', methods=['POST'])
@json_document
def validate(doc, options):
    """Metric axiom report"""
    return commands.validate_document(doc, decimal=options['decimal'])


@main_blueprint.route('/reproduce')
def reproduce():
    """Built-in worked examples"""
    try:
        cap = resolve_cap(request.args.get('cap', current_app.config['LIPNORM_CAP']))
        return jsonify(report(run_reproduce(cap)))
    except ValueError as e:
        return error_reply(e, 400)
    except Exception as e:
        logger.error(f"Reproduction failed: {e}")
        logger.error(traceback.format_exc())
        return error_reply(e, 500)
