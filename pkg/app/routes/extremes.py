from flask import Blueprint

from lipnorm import commands
from .main import json_document

extremes_blueprint = Blueprint('extremes', __name__)


@extremes_blueprint.route('/extreme-check', methods=['POST'])
@json_document
def extreme_check(doc, options):
    return commands.extreme_check_document(doc, kind=options['kind'], decimal=options['decimal'])


@extremes_blueprint.route('/enum-extremes', methods=['POST'])
@json_document
def enum_extremes(doc, options):
    payload, _ = commands.enum_document(doc, kind=options['kind'], cap=options['cap'],
                                        decimal=options['decimal'])
    return payload


@extremes_blueprint.route('/johnson-check', methods=['POST'])
@json_document
def johnson_check(doc, options):
    return commands.johnson_document(doc, kind=options['kind'], decimal=options['decimal'])


@extremes_blueprint.route('/inductive-set', methods=['POST'])
@json_document
def inductive_set(doc, options):
    return commands.inductive_document(doc, cap=options['cap'], decimal=options['decimal'])
