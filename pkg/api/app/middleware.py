"""HTTP middleware for request tracing and logging."""

import uuid
from collections.abc import Awaitable, Callable

from fastapi import Request
from starlette.responses import Response

from app.logger import logger

REQUEST_ID_HEADER = "X-Request-ID"


async def add_request_id_header(
    request: Request, call_next: Callable[[Request], Awaitable[Response]]
) -> Response:
    """Attach a request ID to the response and to every log line of the request.

    A client-supplied ``X-Request-ID`` is echoed back; otherwise a new one is
    generated.

    Args:
        request: Incoming HTTP request.
        call_next: Next middleware in chain.

    Returns:
        Response with X-Request-ID header added.
    """
    request_id = request.headers.get(REQUEST_ID_HEADER) or uuid.uuid4().hex[:12]
    with logger.contextualize(request_id=request_id):
        response: Response = await call_next(request)
        logger.debug(
            "Request handled",
            method=request.method,
            path=request.url.path,
            status=response.status_code,
        )
    response.headers[REQUEST_ID_HEADER] = request_id
    return response
