import logging

from flask import Flask

from lipnorm.config import DEFAULT_CAP, LOG_LEVEL
from .routes import init_routes


def create_app(config=None):
    """Initialize the core application"""
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO))
    app = Flask(__name__)

    # Configure Flask app
    app.config.update(LIPNORM_CAP=DEFAULT_CAP)
    app.json.sort_keys = False
    if config:
        app.config.update(config)

    # Register routes
    init_routes(app)

    return app
