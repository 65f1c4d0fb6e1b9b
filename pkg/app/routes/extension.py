from flask import Blueprint, request

from lipnorm import commands
from .main import json_document

extension_blueprint = Blueprint('extension', __name__)


@extension_blueprint.route('/extend', methods=['POST'])
@json_document
def extend(doc, options):
    """Extension of boundary values; ?variant= overrides the document"""
    return commands.extend_document(doc, variant=request.args.get('variant'), decimal=options['decimal'])
