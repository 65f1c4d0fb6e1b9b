from flask import Blueprint

from lipnorm import commands
from .main import json_document

measures_blueprint = Blueprint('measures', __name__)


@measures_blueprint.route('/norm', methods=['POST'])
@json_document
def norm(doc, options):
    """Dual norm of a measure document"""
    return commands.norm_document(doc, kind=options['kind'], decimal=options['decimal'])
